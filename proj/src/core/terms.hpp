#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "core/mesh.hpp"

namespace utm {

/// Arithmetic expression over the spectral variables (k, alpha, m), parsed
/// once from the term-table literals. Supports integers, pi, the imaginary
/// unit I, sqrt(), and + - * / ** with the usual precedence.
class CoeffExpr {
 public:
  CoeffExpr() = default;
  static CoeffExpr parse(const std::string& text);

  std::complex<double> operator()(double k, double alpha, double m) const;

 private:
  struct Node {
    enum class Op { Constant, VarK, VarAlpha, VarM, Add, Sub, Mul, Div, Pow, Neg, Sqrt };
    Op op = Op::Constant;
    std::complex<double> value;
    int lhs = -1;
    int rhs = -1;
  };

  std::complex<double> eval_node(int index, double k, double alpha, double m) const;

  std::shared_ptr<const std::vector<Node>> nodes_;
  int root_ = -1;

  friend class CoeffExprParser;
};

/// Which integral-term tables to evaluate: Corrected applies the
/// oracle-validated erratum fixes; Transcribed preserves the uncorrected
/// originals so each fix's effect stays measurable (CLI: --erratum-fixes
/// selects Corrected).
enum class TermVariant { Corrected, Transcribed };

/// Data source of one integrand factor.
struct TermAtom {
  enum class Kind {
    InitialData,    ///< spatial transform of an initial profile at sign*k
    InterfaceTrace, ///< time transform of an interface trace at sign*i*alpha
    EdgeData,       ///< time transform of an outer-boundary datum at sign*i*alpha
  };
  Kind kind = Kind::InitialData;
  int component = 1;   ///< spinor component the factor reads
  int data_region = 0; ///< InitialData: 0 = the table's own region, else explicit region
  int edge_region = 0; ///< EdgeData: 1 = left edge (-L), 2 = right edge (+L)
  int branch_sign = 1; ///< +1 or -1 (transform argument sign)
};

/// One integral term: coefficient(k) * [cos_coeff*cos(alpha t) +
/// sin_coeff*sin(alpha t)] * atom_transform * e^{i k * interval_phase * L}.
struct IntegrandTerm {
  std::string atom_name;
  TermAtom atom;
  int interval_phase = 0;
  CoeffExpr cos_coeff;
  CoeffExpr sin_coeff;
};

struct TermList {
  std::string key; ///< e.g. "halfline_r1_c1"
  int region = 1;
  int component = 1;
  bool finite = false;
  std::vector<IntegrandTerm> terms;
};

/// Decodes an atom name into its data-source semantics.
TermAtom decode_atom(const std::string& name);

/// The reviewed term list for one geometry/region/component, parsed lazily
/// from the embedded tables. Thread-safe after first use.
const TermList& term_list(TermVariant variant, bool finite, int region, int component);

/// Sorted, unique, human-readable identifiers of every data slot the list
/// reads, with InitialData region overrides resolved against the list's own
/// region. Forms: "initial:c<1|2>:r<1|2>:<+|->k",
/// "trace:c<1|2>:interface:<+|->", "boundary:c<1|2>:<left|right>:<+|->".
std::vector<std::string> referenced_slots(const TermList& list);

/// Precomputed trace-tail subtraction data for one term list at a fixed mass.
///
/// Subtraction runs only when the whole table passes the phase-pairing check
/// (every trace/edge entry is w(k)*e^{-i*sign*alpha*t}) AND every group's
/// tail weights are expressible as (c*k + d*m + e)/alpha^2; otherwise the
/// list is evaluated plain and `active` is false.
struct SubtractionPlan {
  struct Group {
    TermAtom::Kind kind = TermAtom::Kind::InterfaceTrace;
    int component = 1;
    int edge_region = 0;
    int interval_phase = 0;
    /// rho1 = sum_s s*cc/(i*alpha) = (odd1*k + even1)/alpha^2, likewise rho2
    /// = sum cc/alpha^2; odd/even name the parity of the k-dependence.
    std::complex<double> odd1, even1;
    std::complex<double> odd2, even2;
  };
  bool active = false;
  std::vector<Group> groups;
};

SubtractionPlan build_subtraction_plan(const TermList& list, double mass);

} // namespace utm
