#include "core/terms.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstring>
#include <functional>
#include <iterator>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>
#include <tuple>

#include "core/terms_data.inc"

namespace utm {

// ---------------------------------------------------------------------------
// Expression parsing

class CoeffExprParser {
 public:
  explicit CoeffExprParser(const std::string& text) : text_(text) {}

  CoeffExpr run() {
    CoeffExpr out;
    auto nodes = std::make_shared<std::vector<CoeffExpr::Node>>();
    nodes_ = nodes.get();
    pos_ = 0;
    const int root = parse_sum();
    skip_space();
    if (pos_ != text_.size()) {
      throw std::invalid_argument("trailing input in coefficient expression: " + text_);
    }
    out.nodes_ = std::move(nodes);
    out.root_ = root;
    return out;
  }

 private:
  using Node = CoeffExpr::Node;
  using Op = CoeffExpr::Node::Op;

  int add(Op op, std::complex<double> value = {}, int lhs = -1, int rhs = -1) {
    nodes_->push_back(Node{op, value, lhs, rhs});
    return static_cast<int>(nodes_->size()) - 1;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool consume(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool peek_pow() {
    skip_space();
    return pos_ + 1 < text_.size() && text_[pos_] == '*' && text_[pos_ + 1] == '*';
  }

  int parse_sum() {
    int lhs = parse_product();
    for (;;) {
      skip_space();
      if (consume('+')) {
        lhs = add(Op::Add, {}, lhs, parse_product());
      } else if (consume('-')) {
        lhs = add(Op::Sub, {}, lhs, parse_product());
      } else {
        return lhs;
      }
    }
  }

  int parse_product() {
    int lhs = parse_unary();
    for (;;) {
      if (peek_pow()) {
        throw std::invalid_argument("misplaced '**' in coefficient expression: " + text_);
      }
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
        lhs = add(Op::Mul, {}, lhs, parse_unary());
      } else if (consume('/')) {
        lhs = add(Op::Div, {}, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  int parse_unary() {
    skip_space();
    if (consume('-')) {
      return add(Op::Neg, {}, parse_unary());
    }
    if (consume('+')) {
      return parse_unary();
    }
    return parse_power();
  }

  int parse_power() {
    const int base = parse_primary();
    if (peek_pow()) {
      pos_ += 2;
      return add(Op::Pow, {}, base, parse_unary());
    }
    return base;
  }

  int parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) {
      throw std::invalid_argument("unexpected end of coefficient expression: " + text_);
    }
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      const int inner = parse_sum();
      if (!consume(')')) {
        throw std::invalid_argument("unbalanced parentheses in: " + text_);
      }
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      double value = 0.0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        value = value * 10.0 + (text_[pos_] - '0');
        ++pos_;
      }
      if (pos_ < text_.size() && text_[pos_] == '.') {
        throw std::invalid_argument("non-integer literal in coefficient expression: " + text_);
      }
      return add(Op::Constant, value);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) {
        ++end;
      }
      const std::string name = text_.substr(pos_, end - pos_);
      pos_ = end;
      if (name == "k") return add(Op::VarK);
      if (name == "alpha") return add(Op::VarAlpha);
      if (name == "m") return add(Op::VarM);
      if (name == "pi") return add(Op::Constant, std::numbers::pi);
      if (name == "I") return add(Op::Constant, std::complex<double>(0.0, 1.0));
      if (name == "sqrt") {
        if (!consume('(')) {
          throw std::invalid_argument("sqrt requires parentheses in: " + text_);
        }
        const int inner = parse_sum();
        if (!consume(')')) {
          throw std::invalid_argument("unbalanced parentheses in: " + text_);
        }
        return add(Op::Sqrt, {}, inner);
      }
      throw std::invalid_argument("unknown symbol '" + name + "' in: " + text_);
    }
    throw std::invalid_argument("unexpected character in coefficient expression: " + text_);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  std::vector<Node>* nodes_ = nullptr;
};

CoeffExpr CoeffExpr::parse(const std::string& text) { return CoeffExprParser(text).run(); }

std::complex<double> CoeffExpr::eval_node(int index, double k, double alpha, double m) const {
  const Node& n = (*nodes_)[static_cast<std::size_t>(index)];
  using Op = Node::Op;
  switch (n.op) {
    case Op::Constant:
      return n.value;
    case Op::VarK:
      return {k, 0.0};
    case Op::VarAlpha:
      return {alpha, 0.0};
    case Op::VarM:
      return {m, 0.0};
    case Op::Add:
      return eval_node(n.lhs, k, alpha, m) + eval_node(n.rhs, k, alpha, m);
    case Op::Sub:
      return eval_node(n.lhs, k, alpha, m) - eval_node(n.rhs, k, alpha, m);
    case Op::Mul:
      return eval_node(n.lhs, k, alpha, m) * eval_node(n.rhs, k, alpha, m);
    case Op::Div:
      return eval_node(n.lhs, k, alpha, m) / eval_node(n.rhs, k, alpha, m);
    case Op::Neg:
      return -eval_node(n.lhs, k, alpha, m);
    case Op::Sqrt:
      return std::sqrt(eval_node(n.lhs, k, alpha, m));
    case Op::Pow: {
      const std::complex<double> base = eval_node(n.lhs, k, alpha, m);
      const std::complex<double> expo = eval_node(n.rhs, k, alpha, m);
      if (expo.imag() == 0.0 && expo.real() == std::round(expo.real()) &&
          std::abs(expo.real()) <= 64.0) {
        long p = static_cast<long>(expo.real());
        const bool invert = p < 0;
        p = std::labs(p);
        std::complex<double> acc(1.0, 0.0), cur = base;
        while (p > 0) {
          if (p & 1) acc *= cur;
          cur *= cur;
          p >>= 1;
        }
        return invert ? 1.0 / acc : acc;
      }
      return std::pow(base, expo);
    }
  }
  return {};
}

std::complex<double> CoeffExpr::operator()(double k, double alpha, double m) const {
  if (root_ < 0) {
    return {};
  }
  return eval_node(root_, k, alpha, m);
}

// ---------------------------------------------------------------------------
// Atom decoding

TermAtom decode_atom(const std::string& name) {
  TermAtom atom;
  if (name == "T4typo") {
    // An edge object the source relations reference but never define; its
    // nearest well-defined referent is component 1 at the left edge with the
    // + branch, which is how the transcribed list evaluates it.
    atom.kind = TermAtom::Kind::EdgeData;
    atom.component = 1;
    atom.edge_region = 1;
    atom.branch_sign = +1;
    return atom;
  }
  if (name.size() < 3 || name.size() > 4) {
    throw std::invalid_argument("unknown term atom: " + name);
  }
  const char family = name[0];
  const char comp_ch = name[1];
  const char sign_ch = name[2];
  if ((comp_ch != '1' && comp_ch != '2') || (sign_ch != 'p' && sign_ch != 'm')) {
    throw std::invalid_argument("unknown term atom: " + name);
  }
  atom.component = comp_ch - '0';
  atom.branch_sign = (sign_ch == 'p') ? +1 : -1;
  bool region_suffix = false;
  if (name.size() == 4) {
    if (name[3] != '2' || family != 'P') {
      throw std::invalid_argument("unknown term atom: " + name);
    }
    region_suffix = true;
  }
  switch (family) {
    case 'P':
      atom.kind = TermAtom::Kind::InitialData;
      atom.data_region = region_suffix ? 2 : 0;
      return atom;
    case 'H':
      atom.kind = TermAtom::Kind::InterfaceTrace;
      return atom;
    case 'A':
      atom.kind = TermAtom::Kind::EdgeData;
      atom.edge_region = 1;
      return atom;
    case 'G':
      atom.kind = TermAtom::Kind::EdgeData;
      atom.edge_region = 2;
      return atom;
    default:
      throw std::invalid_argument("unknown term atom: " + name);
  }
}

// ---------------------------------------------------------------------------
// Table registry

namespace {

struct Registry {
  // index: [variant][finite][region-1][component-1]
  std::array<std::array<std::array<std::array<TermList, 2>, 2>, 2>, 2> lists;
};

TermList build_list(const terms_data::RawGroup& group) {
  TermList list;
  list.key = group.key;
  list.finite = std::strncmp(group.key, "finite", 6) == 0;
  const char* rpos = std::strstr(group.key, "_r");
  const char* cpos = std::strstr(group.key, "_c");
  if (rpos == nullptr || cpos == nullptr) {
    throw std::logic_error("malformed term table key");
  }
  list.region = rpos[2] - '0';
  list.component = cpos[2] - '0';
  list.terms.reserve(group.count);
  for (unsigned i = 0; i < group.count; ++i) {
    const terms_data::RawEntry& raw = group.entries[i];
    IntegrandTerm term;
    term.atom_name = raw.atom;
    term.atom = decode_atom(raw.atom);
    term.interval_phase = raw.interval_phase;
    term.cos_coeff = CoeffExpr::parse(raw.cos_coeff);
    term.sin_coeff = CoeffExpr::parse(raw.sin_coeff);
    list.terms.push_back(std::move(term));
  }
  return list;
}

const Registry& registry() {
  static const Registry reg = [] {
    Registry r;
    const auto fill = [&r](int variant, const terms_data::RawGroup* groups, std::size_t count) {
      for (std::size_t i = 0; i < count; ++i) {
        TermList list = build_list(groups[i]);
        const std::size_t f = list.finite ? 1 : 0;
        const std::size_t rg = static_cast<std::size_t>(list.region - 1);
        const std::size_t cp = static_cast<std::size_t>(list.component - 1);
        r.lists[static_cast<std::size_t>(variant)][f][rg][cp] = std::move(list);
      }
    };
    fill(0, terms_data::kCorrectedGroups, std::size(terms_data::kCorrectedGroups));
    fill(1, terms_data::kTranscribedGroups, std::size(terms_data::kTranscribedGroups));
    return r;
  }();
  return reg;
}

} // namespace

const TermList& term_list(TermVariant variant, bool finite, int region, int component) {
  if (region < 1 || region > 2 || component < 1 || component > 2) {
    throw std::invalid_argument("region and component must be 1 or 2");
  }
  const std::size_t v = (variant == TermVariant::Corrected) ? 0 : 1;
  return registry().lists[v][finite ? 1 : 0][static_cast<std::size_t>(region - 1)]
                         [static_cast<std::size_t>(component - 1)];
}

std::vector<std::string> referenced_slots(const TermList& list) {
  std::set<std::string> slots;
  for (const IntegrandTerm& term : list.terms) {
    const TermAtom& a = term.atom;
    const char sign = (a.branch_sign > 0) ? '+' : '-';
    std::string s;
    switch (a.kind) {
      case TermAtom::Kind::InitialData: {
        const int region = (a.data_region != 0) ? a.data_region : list.region;
        s = "initial:c" + std::to_string(a.component) + ":r" + std::to_string(region) + ":" +
            sign + "k";
        break;
      }
      case TermAtom::Kind::InterfaceTrace:
        s = "trace:c" + std::to_string(a.component) + ":interface:" + sign;
        break;
      case TermAtom::Kind::EdgeData:
        s = std::string("boundary:c") + std::to_string(a.component) + ":" +
            (a.edge_region == 1 ? "left" : "right") + ":" + sign;
        break;
    }
    slots.insert(std::move(s));
  }
  return {slots.begin(), slots.end()};
}

// ---------------------------------------------------------------------------
// Subtraction planning

namespace {

constexpr double kPairingSampleKs[] = {0.3, 1.1, 2.7};

bool entry_is_paired(const IntegrandTerm& term, double mass) {
  for (double k : kPairingSampleKs) {
    const double alpha = std::hypot(k, mass);
    const std::complex<double> cc = term.cos_coeff(k, alpha, mass);
    const std::complex<double> ss = term.sin_coeff(k, alpha, mass);
    const std::complex<double> resid =
        ss + std::complex<double>(0.0, static_cast<double>(term.atom.branch_sign)) * cc;
    if (std::abs(resid) > 1e-12 * (1.0 + std::abs(cc))) {
      return false;
    }
  }
  return true;
}

/// Fits rho(k)*alpha^2 (evaluated numerically) to odd*k + even and verifies
/// the fit at two extra abscissae; returns false when the weight is not of
/// that rational form.
bool fit_linear(const std::function<std::complex<double>(double)>& num, std::complex<double>& odd,
                std::complex<double>& even) {
  const std::complex<double> p = num(1.0);
  const std::complex<double> q = num(-1.0);
  odd = 0.5 * (p - q);
  even = 0.5 * (p + q);
  const double scale = 1.0 + std::abs(p) + std::abs(q);
  for (double k : {2.0, 3.5}) {
    if (std::abs(num(k) - (odd * k + even)) > 1e-9 * scale * std::abs(k)) {
      return false;
    }
  }
  return true;
}

} // namespace

SubtractionPlan build_subtraction_plan(const TermList& list, double mass) {
  SubtractionPlan plan;
  struct Key {
    TermAtom::Kind kind;
    int component;
    int edge_region;
    int interval_phase;
    bool operator<(const Key& o) const {
      return std::tie(kind, component, edge_region, interval_phase) <
             std::tie(o.kind, o.component, o.edge_region, o.interval_phase);
    }
  };
  std::map<Key, std::vector<const IntegrandTerm*>> groups;
  for (const IntegrandTerm& term : list.terms) {
    if (term.atom.kind == TermAtom::Kind::InitialData) {
      continue;
    }
    if (!entry_is_paired(term, mass)) {
      return plan; // inactive: the whole list evaluates plain
    }
    groups[{term.atom.kind, term.atom.component, term.atom.edge_region, term.interval_phase}]
        .push_back(&term);
  }
  for (const auto& [key, entries] : groups) {
    SubtractionPlan::Group group;
    group.kind = key.kind;
    group.component = key.component;
    group.edge_region = key.edge_region;
    group.interval_phase = key.interval_phase;
    const auto rho_times_alpha2 = [&](int which) {
      return [&entries, mass, which](double k) {
        const double alpha = std::hypot(k, mass);
        std::complex<double> sum;
        for (const IntegrandTerm* term : entries) {
          const std::complex<double> cc = term->cos_coeff(k, alpha, mass);
          if (which == 1) {
            sum += static_cast<double>(term->atom.branch_sign) * cc /
                   std::complex<double>(0.0, alpha);
          } else {
            sum += cc / (alpha * alpha);
          }
        }
        return sum * (alpha * alpha);
      };
    };
    if (!fit_linear(rho_times_alpha2(1), group.odd1, group.even1) ||
        !fit_linear(rho_times_alpha2(2), group.odd2, group.even2)) {
      plan.groups.clear();
      return plan; // inactive
    }
    plan.groups.push_back(group);
  }
  plan.active = true;
  return plan;
}

} // namespace utm
