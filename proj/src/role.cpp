#include "lrbac/role.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <unordered_set>

#include "lexer.hpp"

namespace lrbac {

struct Role::Node {
  Kind kind;
  std::string name;
  Role left;
  Role right;
};

Role::Role() : Role(bottom()) {}

Role::Role(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Role Role::bottom() {
  static const Role r(std::shared_ptr<const Node>(new Node{Kind::Bottom, {}, Role(nullptr), Role(nullptr)}));
  return r;
}

Role Role::top() {
  static const Role r(std::shared_ptr<const Node>(new Node{Kind::Top, {}, Role(nullptr), Role(nullptr)}));
  return r;
}

Role Role::atom(std::string name) {
  return Role(std::make_shared<const Node>(Node{Kind::Atom, std::move(name), Role(nullptr), Role(nullptr)}));
}

Role Role::meet(Role l, Role r) {
  return Role(std::make_shared<const Node>(Node{Kind::Meet, {}, std::move(l), std::move(r)}));
}

Role Role::join(Role l, Role r) {
  return Role(std::make_shared<const Node>(Node{Kind::Join, {}, std::move(l), std::move(r)}));
}

Role Role::neg(Role r) {
  return Role(std::make_shared<const Node>(Node{Kind::Neg, {}, std::move(r), Role(nullptr)}));
}

Role Role::amp(Role r) {
  return Role(std::make_shared<const Node>(Node{Kind::Amp, {}, std::move(r), Role(nullptr)}));
}

Role::Kind Role::kind() const { return node_->kind; }
const std::string& Role::name() const { return node_->name; }
const Role& Role::lhs() const { return node_->left; }
const Role& Role::rhs() const { return node_->right; }
const Role& Role::operand() const { return node_->left; }

bool Role::same_as(const Role& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::Bottom:
    case Kind::Top:
      return true;
    case Kind::Atom:
      return name() == other.name();
    case Kind::Meet:
    case Kind::Join:
      return lhs().same_as(other.lhs()) && rhs().same_as(other.rhs());
    case Kind::Neg:
    case Kind::Amp:
      return operand().same_as(other.operand());
  }
  return false;
}

Role apply_modifier(const RoleModifier& m, const Role& r) {
  return m.direction == Direction::Up ? Role::join(m.role, r) : Role::meet(m.role, r);
}

Role rminus(const Role& b, const Role& a) { return Role::meet(b, Role::neg(a)); }

// ---------------------------------------------------------------------------
// Printing

namespace {

void print_role(const Role& r, int min_prec, std::string& out) {
  switch (r.kind()) {
    case Role::Kind::Bottom:
      out += "0";
      return;
    case Role::Kind::Top:
      out += "1";
      return;
    case Role::Kind::Atom:
      out += r.name();
      return;
    case Role::Kind::Join: {
      bool wrap = min_prec > 1;
      if (wrap) out += "(";
      print_role(r.lhs(), 1, out);
      out += " | ";
      print_role(r.rhs(), 2, out);
      if (wrap) out += ")";
      return;
    }
    case Role::Kind::Meet: {
      bool wrap = min_prec > 2;
      if (wrap) out += "(";
      print_role(r.lhs(), 2, out);
      out += " & ";
      print_role(r.rhs(), 3, out);
      if (wrap) out += ")";
      return;
    }
    case Role::Kind::Neg:
      out += "!";
      print_role(r.operand(), 3, out);
      return;
    case Role::Kind::Amp:
      out += "amp(";
      print_role(r.operand(), 0, out);
      out += ")";
      return;
  }
}

}  // namespace

std::string to_string(const Role& r) {
  std::string out;
  print_role(r, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Amp normalization

namespace {

// Negation normal form of an already amp-normalized role.
Role nnf(const Role& r, bool negated) {
  switch (r.kind()) {
    case Role::Kind::Bottom:
      return negated ? Role::top() : r;
    case Role::Kind::Top:
      return negated ? Role::bottom() : r;
    case Role::Kind::Atom:
    case Role::Kind::Amp:
      return negated ? Role::neg(r) : r;
    case Role::Kind::Meet:
      return negated ? Role::join(nnf(r.lhs(), true), nnf(r.rhs(), true))
                     : Role::meet(nnf(r.lhs(), false), nnf(r.rhs(), false));
    case Role::Kind::Join:
      return negated ? Role::meet(nnf(r.lhs(), true), nnf(r.rhs(), true))
                     : Role::join(nnf(r.lhs(), false), nnf(r.rhs(), false));
    case Role::Kind::Neg:
      return nnf(r.operand(), !negated);
  }
  return r;
}

// amp applied to a role in negation normal form.
Role ampify(const Role& r) {
  switch (r.kind()) {
    case Role::Kind::Bottom:
    case Role::Kind::Top:
      return r;
    case Role::Kind::Meet:
      return Role::meet(ampify(r.lhs()), ampify(r.rhs()));
    case Role::Kind::Join:
      return Role::join(ampify(r.lhs()), ampify(r.rhs()));
    default:
      return Role::amp(r);
  }
}

}  // namespace

Role normalize_amp(const Role& r) {
  switch (r.kind()) {
    case Role::Kind::Bottom:
    case Role::Kind::Top:
    case Role::Kind::Atom:
      return r;
    case Role::Kind::Meet:
      return Role::meet(normalize_amp(r.lhs()), normalize_amp(r.rhs()));
    case Role::Kind::Join:
      return Role::join(normalize_amp(r.lhs()), normalize_amp(r.rhs()));
    case Role::Kind::Neg:
      return Role::neg(normalize_amp(r.operand()));
    case Role::Kind::Amp:
      return ampify(nnf(normalize_amp(r.operand()), false));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Universe

RoleUniverse::RoleUniverse(std::initializer_list<Role> roles) {
  for (const auto& r : roles) add(r);
}

RoleUniverse RoleUniverse::of(const std::vector<Role>& roles) {
  RoleUniverse u;
  for (const auto& r : roles) u.add(r);
  return u;
}

RoleUniverse RoleUniverse::of_atoms(const std::vector<std::string>& atoms) {
  RoleUniverse u;
  for (const auto& a : atoms) u.add_atom(a);
  return u;
}

void RoleUniverse::add_atom(const std::string& name) {
  if (atom_index_.count(name)) return;
  atom_index_.emplace(name, atoms_.size());
  atoms_.push_back(name);
}

void RoleUniverse::add_generator(const Role& literal) {
  // Register what the literal itself mentions first so that generators are
  // listed in dependency order.
  const Role& base = literal.kind() == Role::Kind::Neg ? literal.operand() : literal;
  if (base.kind() == Role::Kind::Atom) {
    add_atom(base.name());
  } else {
    add_generator(base.operand());
  }
  std::string key = to_string(literal);
  if (generator_index_.count(key)) return;
  generator_index_.emplace(key, generators_.size());
  generators_.push_back(literal);
}

void RoleUniverse::add(const Role& r) {
  std::function<void(const Role&)> walk = [&](const Role& n) {
    switch (n.kind()) {
      case Role::Kind::Bottom:
      case Role::Kind::Top:
        return;
      case Role::Kind::Atom:
        add_atom(n.name());
        return;
      case Role::Kind::Meet:
      case Role::Kind::Join:
        walk(n.lhs());
        walk(n.rhs());
        return;
      case Role::Kind::Neg:
        walk(n.operand());
        return;
      case Role::Kind::Amp:
        add_generator(n.operand());
        return;
    }
  };
  walk(normalize_amp(r));
}

std::optional<std::size_t> RoleUniverse::atom_index(const std::string& name) const {
  auto it = atom_index_.find(name);
  if (it == atom_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> RoleUniverse::generator_index(const std::string& key) const {
  auto it = generator_index_.find(key);
  if (it == generator_index_.end()) return std::nullopt;
  return it->second;
}

bool RoleUniverse::covers(const Role& r) const {
  RoleUniverse probe;
  probe.add(r);
  for (const auto& a : probe.atoms()) {
    if (!atom_index(a)) return false;
  }
  for (const auto& g : probe.amp_generators()) {
    if (!generator_index(to_string(g))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Decision procedure: truth tables over the constrained valuation set.

namespace {

constexpr std::size_t kMaxVariables = 20;
constexpr std::size_t kMaxCanonicalVariables = 12;

using Bits = std::vector<std::uint64_t>;

class Valuations {
 public:
  explicit Valuations(const RoleUniverse& u) : universe_(u) {
    vars_ = u.size();
    if (vars_ > kMaxVariables) {
      throw UniverseError("role universe has " + std::to_string(vars_) +
                          " generators; at most " + std::to_string(kMaxVariables) + " are supported");
    }
    points_ = std::size_t{1} << vars_;
    words_ = (points_ + 63) / 64;
    all_.assign(words_, ~std::uint64_t{0});
    if (points_ < 64) all_[0] = (std::uint64_t{1} << points_) - 1;
    patterns_.reserve(vars_);
    for (std::size_t v = 0; v < vars_; ++v) {
      Bits b(words_, 0);
      for (std::size_t p = 0; p < points_; ++p) {
        if ((p >> v) & 1) b[p / 64] |= std::uint64_t{1} << (p % 64);
      }
      patterns_.push_back(std::move(b));
    }
    valid_ = all_;
    const std::size_t atoms = u.atoms().size();
    for (std::size_t g = 0; g < u.amp_generators().size(); ++g) {
      Bits lit = denote(u.amp_generators()[g]);
      const Bits& gen = patterns_[atoms + g];
      for (std::size_t w = 0; w < words_; ++w) valid_[w] &= (~lit[w] | gen[w]);
    }
    for (std::size_t w = 0; w < words_; ++w) valid_[w] &= all_[w];
  }

  // Denotation of an amp-normalized role.
  Bits denote(const Role& r) const {
    switch (r.kind()) {
      case Role::Kind::Bottom:
        return Bits(words_, 0);
      case Role::Kind::Top:
        return all_;
      case Role::Kind::Atom: {
        auto i = universe_.atom_index(r.name());
        if (!i) throw UniverseError("role atom '" + r.name() + "' is outside the universe");
        return patterns_[*i];
      }
      case Role::Kind::Meet: {
        Bits a = denote(r.lhs());
        Bits b = denote(r.rhs());
        for (std::size_t w = 0; w < words_; ++w) a[w] &= b[w];
        return a;
      }
      case Role::Kind::Join: {
        Bits a = denote(r.lhs());
        Bits b = denote(r.rhs());
        for (std::size_t w = 0; w < words_; ++w) a[w] |= b[w];
        return a;
      }
      case Role::Kind::Neg: {
        Bits a = denote(r.operand());
        for (std::size_t w = 0; w < words_; ++w) a[w] = ~a[w] & all_[w];
        return a;
      }
      case Role::Kind::Amp: {
        std::string key = to_string(r.operand());
        auto i = universe_.generator_index(key);
        if (!i) throw UniverseError("generator 'amp(" + key + ")' is outside the universe");
        return patterns_[universe_.atoms().size() + *i];
      }
    }
    return Bits(words_, 0);
  }

  std::size_t vars() const { return vars_; }
  std::size_t points() const { return points_; }
  std::size_t words() const { return words_; }
  const Bits& valid() const { return valid_; }
  const Bits& all() const { return all_; }
  const Bits& pattern(std::size_t v) const { return patterns_[v]; }

  std::string var_name(std::size_t v) const {
    const std::size_t atoms = universe_.atoms().size();
    if (v < atoms) return universe_.atoms()[v];
    return "amp(" + to_string(universe_.amp_generators()[v - atoms]) + ")";
  }
  Role var_role(std::size_t v) const {
    const std::size_t atoms = universe_.atoms().size();
    if (v < atoms) return Role::atom(universe_.atoms()[v]);
    return Role::amp(universe_.amp_generators()[v - atoms]);
  }

 private:
  const RoleUniverse& universe_;
  std::size_t vars_ = 0;
  std::size_t points_ = 0;
  std::size_t words_ = 0;
  Bits all_;
  Bits valid_;
  std::vector<Bits> patterns_;
};

bool same_on(const Bits& a, const Bits& b, const Bits& mask) {
  for (std::size_t w = 0; w < a.size(); ++w) {
    if ((a[w] ^ b[w]) & mask[w]) return false;
  }
  return true;
}

void require_covered(const Role& r, const RoleUniverse& u) {
  if (!u.covers(r)) throw UniverseError("role '" + to_string(r) + "' mentions generators outside the universe");
}

}  // namespace

bool equiv(const Role& r1, const Role& r2, const RoleUniverse& u) {
  require_covered(r1, u);
  require_covered(r2, u);
  Valuations vals(u);
  return same_on(vals.denote(normalize_amp(r1)), vals.denote(normalize_amp(r2)), vals.valid());
}

bool dominates(const Role& r1, const Role& r2, const RoleUniverse& u) {
  return equiv(r1, Role::join(r1, r2), u);
}

bool equiv(const Role& r1, const Role& r2) {
  RoleUniverse u{r1, r2};
  Valuations vals(u);
  return same_on(vals.denote(normalize_amp(r1)), vals.denote(normalize_amp(r2)), vals.valid());
}

bool dominates(const Role& r1, const Role& r2) {
  RoleUniverse u{r1, r2};
  Valuations vals(u);
  Bits a = vals.denote(normalize_amp(r1));
  Bits b = vals.denote(normalize_amp(r2));
  // r2 & !r1 must be empty on valid valuations.
  for (std::size_t w = 0; w < a.size(); ++w) {
    if (b[w] & ~a[w] & vals.valid()[w]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Canonical DNF

namespace {

struct Cube {
  std::uint32_t care = 0;
  std::uint32_t value = 0;
  Bits points;
  std::string text;
  int literals = 0;
};

struct Dnf {
  std::vector<Cube> terms;
};

std::string cube_text(const Valuations& vals, std::uint32_t care, std::uint32_t value, Role* as_role) {
  std::vector<std::pair<std::string, bool>> lits;
  std::vector<std::pair<std::string, std::size_t>> order;
  for (std::size_t v = 0; v < vals.vars(); ++v) {
    if ((care >> v) & 1) order.emplace_back(vals.var_name(v), v);
  }
  std::sort(order.begin(), order.end());
  std::string text;
  bool first = true;
  Role acc = Role::top();
  for (const auto& [name, v] : order) {
    bool positive = (value >> v) & 1;
    if (!first) text += " & ";
    text += positive ? name : "!" + name;
    Role lit = positive ? vals.var_role(v) : Role::neg(vals.var_role(v));
    acc = first ? lit : Role::meet(acc, lit);
    first = false;
  }
  if (first) text = "1";
  if (as_role) *as_role = acc;
  return text;
}

// Irredundant prime cover of `on`, using `on | dont_care` for primality.
Dnf minimal_dnf(const Valuations& vals, const Bits& on, const Bits& dont_care) {
  const std::size_t n = vals.vars();
  const std::size_t words = vals.words();
  Bits upper(words);
  for (std::size_t w = 0; w < words; ++w) upper[w] = (on[w] | dont_care[w]) & vals.all()[w];

  auto is_implicant = [&](const Bits& pts) {
    for (std::size_t w = 0; w < words; ++w) {
      if (pts[w] & ~upper[w] & vals.all()[w]) return false;
    }
    return true;
  };

  std::vector<Cube> implicants;
  std::unordered_set<std::uint64_t> implicant_keys;
  auto key = [](std::uint32_t care, std::uint32_t value) {
    return (static_cast<std::uint64_t>(care) << 32) | value;
  };

  // Depth-first enumeration of all 3^n cubes.
  std::function<void(std::size_t, std::uint32_t, std::uint32_t, const Bits&)> rec =
      [&](std::size_t v, std::uint32_t care, std::uint32_t value, const Bits& pts) {
        bool empty = true;
        for (std::size_t w = 0; w < words; ++w) {
          if (pts[w]) {
            empty = false;
            break;
          }
        }
        if (empty) return;
        if (v == n) {
          if (is_implicant(pts)) {
            implicants.push_back({care, value, pts, {}, std::popcount(care)});
            implicant_keys.insert(key(care, value));
          }
          return;
        }
        rec(v + 1, care, value, pts);
        Bits pos(words);
        Bits neg(words);
        for (std::size_t w = 0; w < words; ++w) {
          pos[w] = pts[w] & vals.pattern(v)[w];
          neg[w] = pts[w] & ~vals.pattern(v)[w];
        }
        rec(v + 1, care | (1u << v), value | (1u << v), pos);
        rec(v + 1, care | (1u << v), value, neg);
      };
  rec(0, 0, 0, vals.all());

  std::vector<Cube> primes;
  for (auto& c : implicants) {
    bool prime = true;
    for (std::size_t v = 0; v < n && prime; ++v) {
      if ((c.care >> v) & 1) {
        std::uint32_t care = c.care & ~(1u << v);
        if (implicant_keys.count(key(care, c.value & care))) prime = false;
      }
    }
    if (!prime) continue;
    bool touches = false;
    for (std::size_t w = 0; w < words; ++w) {
      if (c.points[w] & on[w]) touches = true;
    }
    if (!touches) continue;
    c.text = cube_text(vals, c.care, c.value, nullptr);
    primes.push_back(std::move(c));
  }

  // Drop redundant primes, trying the longest terms first.
  std::sort(primes.begin(), primes.end(), [](const Cube& a, const Cube& b) {
    if (a.literals != b.literals) return a.literals > b.literals;
    return a.text > b.text;
  });
  std::vector<bool> kept(primes.size(), true);
  for (std::size_t i = 0; i < primes.size(); ++i) {
    Bits cover(words, 0);
    for (std::size_t j = 0; j < primes.size(); ++j) {
      if (j == i || !kept[j]) continue;
      for (std::size_t w = 0; w < words; ++w) cover[w] |= primes[j].points[w];
    }
    bool covered = true;
    for (std::size_t w = 0; w < words; ++w) {
      if (on[w] & ~cover[w]) covered = false;
    }
    if (covered) kept[i] = false;
  }
  Dnf out;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (kept[i]) out.terms.push_back(std::move(primes[i]));
  }
  std::sort(out.terms.begin(), out.terms.end(), [](const Cube& a, const Cube& b) {
    if (a.literals != b.literals) return a.literals < b.literals;
    return a.text < b.text;
  });
  return out;
}

std::pair<std::string, Role> render_dnf(const Valuations& vals, const Dnf& dnf) {
  if (dnf.terms.empty()) return {"0", Role::bottom()};
  std::string text;
  Role acc;
  for (std::size_t i = 0; i < dnf.terms.size(); ++i) {
    Role term;
    std::string t = cube_text(vals, dnf.terms[i].care, dnf.terms[i].value, &term);
    if (t == "1") return {"1", Role::top()};
    if (i) text += " | ";
    text += t;
    acc = i ? Role::join(acc, term) : term;
  }
  return {text, acc};
}

std::pair<std::string, Role> canonicalize(const Role& r) {
  RoleUniverse u{r};
  if (u.size() > kMaxCanonicalVariables) return {to_string(r), r};
  // Sorting atoms keeps the variable numbering independent of mention order.
  std::vector<std::string> atoms = u.atoms();
  std::sort(atoms.begin(), atoms.end());
  RoleUniverse sorted = RoleUniverse::of_atoms(atoms);
  sorted.add(r);
  Valuations vals(sorted);
  Bits f = vals.denote(normalize_amp(r));
  Bits on(vals.words());
  Bits dc(vals.words());
  for (std::size_t w = 0; w < vals.words(); ++w) {
    on[w] = f[w] & vals.valid()[w];
    dc[w] = ~vals.valid()[w] & vals.all()[w];
  }
  return render_dnf(vals, minimal_dnf(vals, on, dc));
}

}  // namespace

std::string canonical_string(const Role& r) { return canonicalize(r).first; }

Role canonical_form(const Role& r) { return canonicalize(r).second; }

std::vector<Role> enumerate_roles(const RoleUniverse& u, std::size_t limit) {
  if (u.size() > 3) {
    throw UniverseError("enumerate_roles supports at most 3 generators, got " + std::to_string(u.size()));
  }
  Valuations vals(u);
  std::vector<std::size_t> valid_points;
  for (std::size_t p = 0; p < vals.points(); ++p) {
    if ((vals.valid()[0] >> p) & 1) valid_points.push_back(p);
  }
  const std::size_t classes = std::size_t{1} << valid_points.size();
  Bits dc(1, ~vals.valid()[0] & vals.all()[0]);
  std::vector<Role> out;
  for (std::size_t mask = 0; mask < classes && out.size() < limit; ++mask) {
    Bits on(1, 0);
    for (std::size_t i = 0; i < valid_points.size(); ++i) {
      if ((mask >> i) & 1) on[0] |= std::uint64_t{1} << valid_points[i];
    }
    out.push_back(render_dnf(vals, minimal_dnf(vals, on, dc)).second);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

namespace {

Role parse_join(TokenStream& ts, const std::map<std::string, Role>& aliases);

Role parse_primary(TokenStream& ts, const std::map<std::string, Role>& aliases) {
  const Token& t = ts.peek();
  if (t.kind == Token::Kind::Int && (t.text == "0" || t.text == "1")) {
    ts.next();
    return t.text == "0" ? Role::bottom() : Role::top();
  }
  if (ts.accept_symbol("!")) return Role::neg(parse_primary(ts, aliases));
  if (ts.accept_symbol("(")) {
    Role r = parse_join(ts, aliases);
    ts.expect_symbol(")");
    return r;
  }
  if (ts.accept_keyword("amp")) {
    ts.expect_symbol("(");
    Role r = parse_join(ts, aliases);
    ts.expect_symbol(")");
    return Role::amp(r);
  }
  if (t.kind == Token::Kind::Ident && !is_keyword(t.text)) {
    std::string name = ts.next().text;
    auto it = aliases.find(name);
    return it != aliases.end() ? it->second : Role::atom(name);
  }
  ts.fail("expected a role");
}

Role parse_meet(TokenStream& ts, const std::map<std::string, Role>& aliases) {
  Role r = parse_primary(ts, aliases);
  while (ts.accept_symbol("&")) r = Role::meet(r, parse_primary(ts, aliases));
  return r;
}

Role parse_join(TokenStream& ts, const std::map<std::string, Role>& aliases) {
  Role r = parse_meet(ts, aliases);
  while (ts.accept_symbol("|")) r = Role::join(r, parse_meet(ts, aliases));
  return r;
}

}  // namespace

Role parse_role_tokens(TokenStream& ts, const std::map<std::string, Role>& aliases) {
  return parse_join(ts, aliases);
}

}  // namespace detail

Role parse_role(std::string_view src, const std::map<std::string, Role>& aliases) {
  detail::TokenStream ts(detail::tokenize(src));
  Role r = detail::parse_role_tokens(ts, aliases);
  if (!ts.at_end()) ts.fail("unexpected trailing input after role");
  return r;
}

}  // namespace lrbac
