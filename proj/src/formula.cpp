#include "prefrev/formula.hpp"

#include <algorithm>

namespace prefrev {

struct Formula::Node {
  Kind kind = Kind::kTrue;
  std::string symbol;
  std::string sort;
  std::vector<Term> terms;
  std::vector<Formula> children;
};

namespace {

const std::shared_ptr<const Formula::Node>& true_node();

int precedence(Formula::Kind kind) {
  using K = Formula::Kind;
  switch (kind) {
    case K::kForall:
    case K::kExists: return 0;
    case K::kIff: return 1;
    case K::kImplies: return 2;
    case K::kOr: return 3;
    case K::kAnd: return 4;
    case K::kNot: return 5;
    default: return 6;
  }
}

void render(const Formula& f, std::string& out);

void render_child(const Formula& child, bool parenthesize, std::string& out) {
  if (parenthesize) out += "(";
  render(child, out);
  if (parenthesize) out += ")";
}

void render(const Formula& f, std::string& out) {
  using K = Formula::Kind;
  const int prec = precedence(f.kind());
  switch (f.kind()) {
    case K::kTrue: out += "true"; return;
    case K::kFalse: out += "false"; return;
    case K::kPredicate:
      out += Term::apply(f.symbol(), {f.terms().begin(), f.terms().end()}).to_string();
      return;
    case K::kEqual:
      out += f.terms()[0].to_string() + " = " + f.terms()[1].to_string();
      return;
    case K::kLess:
      out += f.terms()[0].to_string() + " < " + f.terms()[1].to_string();
      return;
    case K::kNot: {
      out += "~";
      const Formula& c = f.children()[0];
      const bool relation = c.kind() == K::kEqual || c.kind() == K::kLess;
      render_child(c, relation || precedence(c.kind()) < prec, out);
      return;
    }
    case K::kAnd:
    case K::kOr: {
      const char* op = f.kind() == K::kAnd ? " & " : " | ";
      bool first = true;
      for (const auto& c : f.children()) {
        if (!first) out += op;
        first = false;
        render_child(c, precedence(c.kind()) <= prec, out);
      }
      return;
    }
    case K::kImplies: {
      const Formula& l = f.children()[0];
      const Formula& r = f.children()[1];
      render_child(l, precedence(l.kind()) <= prec, out);
      out += " -> ";
      render_child(r, precedence(r.kind()) < prec, out);
      return;
    }
    case K::kIff: {
      const Formula& l = f.children()[0];
      const Formula& r = f.children()[1];
      render_child(l, precedence(l.kind()) <= prec, out);
      out += " <-> ";
      render_child(r, precedence(r.kind()) <= prec, out);
      return;
    }
    case K::kForall:
    case K::kExists:
      out += f.kind() == K::kForall ? "forall " : "exists ";
      out += f.symbol() + ":" + f.sort_id() + ". ";
      render(f.children()[0], out);
      return;
  }
}

}  // namespace

Formula::Formula() : node_(true_node()) {}

namespace {

const std::shared_ptr<const Formula::Node>& true_node() {
  static const std::shared_ptr<const Formula::Node> node = std::make_shared<Formula::Node>();
  return node;
}

}  // namespace

Formula Formula::top() { return Formula(); }

Formula Formula::bottom() {
  static const Formula f = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::kFalse;
    return Formula(std::move(n));
  }();
  return f;
}

Formula Formula::predicate(std::string symbol, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kPredicate;
  n->symbol = std::move(symbol);
  n->terms = std::move(args);
  return Formula(std::move(n));
}

Formula Formula::equal(Term lhs, Term rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kEqual;
  n->terms = {std::move(lhs), std::move(rhs)};
  return Formula(std::move(n));
}

Formula Formula::less(Term lhs, Term rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kLess;
  n->terms = {std::move(lhs), std::move(rhs)};
  return Formula(std::move(n));
}

Formula Formula::negation(Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kNot;
  n->children = {std::move(f)};
  return Formula(std::move(n));
}

Formula Formula::conjunction(std::vector<Formula> fs) {
  if (fs.empty()) return top();
  if (fs.size() == 1) return std::move(fs.front());
  auto n = std::make_shared<Node>();
  n->kind = Kind::kAnd;
  n->children = std::move(fs);
  return Formula(std::move(n));
}

Formula Formula::disjunction(std::vector<Formula> fs) {
  if (fs.empty()) return bottom();
  if (fs.size() == 1) return std::move(fs.front());
  auto n = std::make_shared<Node>();
  n->kind = Kind::kOr;
  n->children = std::move(fs);
  return Formula(std::move(n));
}

Formula Formula::implication(Formula lhs, Formula rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kImplies;
  n->children = {std::move(lhs), std::move(rhs)};
  return Formula(std::move(n));
}

Formula Formula::equivalence(Formula lhs, Formula rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kIff;
  n->children = {std::move(lhs), std::move(rhs)};
  return Formula(std::move(n));
}

Formula Formula::forall(std::string var, std::string sort, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kForall;
  n->symbol = std::move(var);
  n->sort = std::move(sort);
  n->children = {std::move(body)};
  return Formula(std::move(n));
}

Formula Formula::exists(std::string var, std::string sort, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kExists;
  n->symbol = std::move(var);
  n->sort = std::move(sort);
  n->children = {std::move(body)};
  return Formula(std::move(n));
}

Formula::Kind Formula::kind() const noexcept { return node_->kind; }

bool Formula::is_atom() const noexcept {
  const Kind k = node_->kind;
  return k == Kind::kPredicate || k == Kind::kEqual || k == Kind::kLess;
}

bool Formula::is_quantifier() const noexcept {
  return node_->kind == Kind::kForall || node_->kind == Kind::kExists;
}

const std::string& Formula::symbol() const noexcept { return node_->symbol; }
const std::string& Formula::sort_id() const noexcept { return node_->sort; }
std::span<const Term> Formula::terms() const noexcept { return node_->terms; }
std::span<const Formula> Formula::children() const noexcept { return node_->children; }

Formula Formula::complement() const {
  if (kind() == Kind::kNot) return children()[0];
  if (kind() == Kind::kTrue) return bottom();
  if (kind() == Kind::kFalse) return top();
  return negation(*this);
}

bool Formula::is_ground() const {
  if (is_quantifier()) return false;
  if (!std::all_of(node_->terms.begin(), node_->terms.end(), [](const Term& t) { return t.is_ground(); })) return false;
  return std::all_of(node_->children.begin(), node_->children.end(), [](const Formula& c) { return c.is_ground(); });
}

std::string Formula::to_string() const {
  std::string out;
  render(*this, out);
  return out;
}

Formula Formula::substitute(std::string_view var, const Term& value) const {
  if (is_quantifier() && symbol() == var) return *this;  // shadowed
  if (node_->terms.empty() && node_->children.empty()) return *this;
  auto n = std::make_shared<Node>(*node_);
  for (auto& t : n->terms) t = t.substitute(var, value);
  for (auto& c : n->children) c = c.substitute(var, value);
  return Formula(std::move(n));
}

Formula Formula::map_atoms(const std::function<Formula(const Formula&)>& f) const {
  if (is_atom()) return f(*this);
  if (node_->children.empty()) return *this;
  auto n = std::make_shared<Node>(*node_);
  for (auto& c : n->children) c = c.map_atoms(f);
  return Formula(std::move(n));
}

void Formula::for_each_atom(const std::function<void(const Formula&)>& f) const {
  if (is_atom()) {
    f(*this);
    return;
  }
  for (const auto& c : node_->children) c.for_each_atom(f);
}

void Formula::for_each_term(const std::function<void(const Term&)>& f) const {
  for (const auto& t : node_->terms) f(t);
  for (const auto& c : node_->children) c.for_each_term(f);
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.symbol == y.symbol && x.sort == y.sort && x.terms == y.terms &&
         x.children == y.children;
}

}  // namespace prefrev
