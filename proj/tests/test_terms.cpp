// Integral-term tables: coefficient values against independently generated
// symbolic samples, atom decoding, slot dependency sets, phase structure, and
// the tail-subtraction gate.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "core/terms.hpp"

#include "terms_golden.inc"

using utm::CoeffExpr;
using utm::IntegrandTerm;
using utm::SubtractionPlan;
using utm::TermAtom;
using utm::TermList;
using utm::TermVariant;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct ListId {
  TermVariant variant;
  bool finite;
  int region;
  int component;
};

const TermList& list_for(const ListId& id) {
  return utm::term_list(id.variant, id.finite, id.region, id.component);
}

ListId parse_group(int variant, const std::string& group) {
  ListId id;
  id.variant = variant == 0 ? TermVariant::Corrected : TermVariant::Transcribed;
  id.finite = group.rfind("finite", 0) == 0;
  const auto r_pos = group.find("_r");
  const auto c_pos = group.find("_c");
  REQUIRE(r_pos != std::string::npos);
  REQUIRE(c_pos != std::string::npos);
  id.region = group[r_pos + 2] - '0';
  id.component = group[c_pos + 2] - '0';
  return id;
}

std::vector<std::string> slots(const ListId& id) {
  return utm::referenced_slots(list_for(id));
}

}  // namespace

TEST_CASE("table coefficients match independently generated samples") {
  // Count how many samples touch each (variant, group, entry) so we can also
  // assert the sample set covers every entry of every list.
  std::map<std::tuple<int, std::string, unsigned>, int> seen;
  for (const GoldenTermSample& s : kGoldenTermSamples) {
    const ListId id = parse_group(s.variant, s.group);
    const TermList& list = list_for(id);
    REQUIRE(s.entry < list.terms.size());
    const IntegrandTerm& term = list.terms[s.entry];
    const double alpha = std::hypot(s.k, s.m);
    const std::complex<double> cos_val = term.cos_coeff(s.k, alpha, s.m);
    const std::complex<double> sin_val = term.sin_coeff(s.k, alpha, s.m);
    CAPTURE(s.variant, s.group, s.entry, s.k, s.m);
    CHECK(std::abs(cos_val - std::complex<double>(s.cos_re, s.cos_im)) < 1e-13);
    CHECK(std::abs(sin_val - std::complex<double>(s.sin_re, s.sin_im)) < 1e-13);
    ++seen[{s.variant, s.group, s.entry}];
  }
  for (int v = 0; v < 2; ++v) {
    for (bool finite : {false, true}) {
      for (int r = 1; r <= 2; ++r) {
        for (int c = 1; c <= 2; ++c) {
          const TermList& list = utm::term_list(
              v == 0 ? TermVariant::Corrected : TermVariant::Transcribed, finite, r, c);
          for (unsigned e = 0; e < list.terms.size(); ++e) {
            CAPTURE(v, list.key, e);
            CHECK(seen[{v, list.key, e}] == 3);
          }
        }
      }
    }
  }
}

TEST_CASE("term lists carry consistent metadata and sizes") {
  for (int v = 0; v < 2; ++v) {
    const TermVariant variant = v == 0 ? TermVariant::Corrected : TermVariant::Transcribed;
    for (bool finite : {false, true}) {
      for (int r = 1; r <= 2; ++r) {
        for (int c = 1; c <= 2; ++c) {
          const TermList& list = utm::term_list(variant, finite, r, c);
          CAPTURE(v, list.key);
          CHECK(list.region == r);
          CHECK(list.component == c);
          CHECK(list.finite == finite);
          const std::string expected_key = std::string(finite ? "finite" : "halfline") + "_r" +
                                           std::to_string(r) + "_c" + std::to_string(c);
          CHECK(list.key == expected_key);
        }
      }
    }
  }

  // Sizes, frozen from the shipped tables: every half-line list has 6 terms;
  // corrected finite lists have 14.  The transcribed finite lists differ per
  // slot: r1_c1 gains two spurious edge terms (16), the c2 lists lost their
  // trace terms and one boundary branch each (9), and r2_c1 alone survived
  // transcription intact (14).
  for (int r = 1; r <= 2; ++r) {
    for (int c = 1; c <= 2; ++c) {
      CHECK(utm::term_list(TermVariant::Corrected, false, r, c).terms.size() == 6);
      CHECK(utm::term_list(TermVariant::Transcribed, false, r, c).terms.size() == 6);
      CHECK(utm::term_list(TermVariant::Corrected, true, r, c).terms.size() == 14);
    }
  }
  CHECK(utm::term_list(TermVariant::Transcribed, true, 1, 1).terms.size() == 16);
  CHECK(utm::term_list(TermVariant::Transcribed, true, 1, 2).terms.size() == 9);
  CHECK(utm::term_list(TermVariant::Transcribed, true, 2, 1).terms.size() == 14);
  CHECK(utm::term_list(TermVariant::Transcribed, true, 2, 2).terms.size() == 9);
}

TEST_CASE("atom names decode to data source, component, branch sign") {
  const TermAtom p1p = utm::decode_atom("P1p");
  CHECK(p1p.kind == TermAtom::Kind::InitialData);
  CHECK(p1p.component == 1);
  CHECK(p1p.data_region == 0);  // 0 = the table's own region
  CHECK(p1p.branch_sign == 1);

  const TermAtom p2m = utm::decode_atom("P2m");
  CHECK(p2m.kind == TermAtom::Kind::InitialData);
  CHECK(p2m.component == 2);
  CHECK(p2m.data_region == 0);
  CHECK(p2m.branch_sign == -1);

  // Explicit-region override: only the initial-data family admits it.
  const TermAtom p2p2 = utm::decode_atom("P2p2");
  CHECK(p2p2.kind == TermAtom::Kind::InitialData);
  CHECK(p2p2.component == 2);
  CHECK(p2p2.data_region == 2);
  CHECK(p2p2.branch_sign == 1);

  const TermAtom h2m = utm::decode_atom("H2m");
  CHECK(h2m.kind == TermAtom::Kind::InterfaceTrace);
  CHECK(h2m.component == 2);
  CHECK(h2m.branch_sign == -1);

  const TermAtom a1p = utm::decode_atom("A1p");
  CHECK(a1p.kind == TermAtom::Kind::EdgeData);
  CHECK(a1p.component == 1);
  CHECK(a1p.edge_region == 1);  // left edge
  CHECK(a1p.branch_sign == 1);

  const TermAtom g2m = utm::decode_atom("G2m");
  CHECK(g2m.kind == TermAtom::Kind::EdgeData);
  CHECK(g2m.component == 2);
  CHECK(g2m.edge_region == 2);  // right edge
  CHECK(g2m.branch_sign == -1);

  // The transcribed tables reference one edge object the source relations
  // never define; it decodes to its nearest well-defined referent.
  const TermAtom typo = utm::decode_atom("T4typo");
  CHECK(typo.kind == TermAtom::Kind::EdgeData);
  CHECK(typo.component == 1);
  CHECK(typo.edge_region == 1);
  CHECK(typo.branch_sign == 1);

  for (const char* bad : {"X1p", "P3m", "H1x", "A1p2", "H1m2", "P2m3", "P1", "", "T4typa"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(utm::decode_atom(bad), std::invalid_argument);
  }

  CHECK_THROWS_AS(utm::term_list(TermVariant::Corrected, false, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(utm::term_list(TermVariant::Corrected, false, 1, 3), std::invalid_argument);
}

TEST_CASE("slot dependency sets are exactly the frozen sets") {
  using V = std::vector<std::string>;

  // --- Corrected tables ---
  // First-component half-line representations read only the two initial
  // transforms of their own region plus the first-component interface trace.
  const V corr_half_r1_c1 = {"initial:c1:r1:+k", "initial:c1:r1:-k", "initial:c2:r1:+k",
                             "initial:c2:r1:-k", "trace:c1:interface:+", "trace:c1:interface:-"};
  const V corr_half_r1_c2 = {"initial:c1:r1:+k", "initial:c1:r1:-k", "initial:c2:r1:+k",
                             "initial:c2:r1:-k", "trace:c2:interface:+", "trace:c2:interface:-"};
  const V corr_half_r2_c1 = {"initial:c1:r2:+k", "initial:c1:r2:-k", "initial:c2:r2:+k",
                             "initial:c2:r2:-k", "trace:c1:interface:+", "trace:c1:interface:-"};
  const V corr_half_r2_c2 = {"initial:c1:r2:+k", "initial:c1:r2:-k", "initial:c2:r2:+k",
                             "initial:c2:r2:-k", "trace:c2:interface:+", "trace:c2:interface:-"};
  CHECK(slots({TermVariant::Corrected, false, 1, 1}) == corr_half_r1_c1);
  CHECK(slots({TermVariant::Corrected, false, 1, 2}) == corr_half_r1_c2);
  CHECK(slots({TermVariant::Corrected, false, 2, 1}) == corr_half_r2_c1);
  CHECK(slots({TermVariant::Corrected, false, 2, 2}) == corr_half_r2_c2);

  const V corr_fin_r1_c1 = {"boundary:c1:left:+",   "boundary:c1:left:-",
                            "boundary:c2:left:+",   "boundary:c2:left:-",
                            "initial:c1:r1:+k",     "initial:c1:r1:-k",
                            "initial:c2:r1:+k",     "initial:c2:r1:-k",
                            "trace:c1:interface:+", "trace:c1:interface:-"};
  const V corr_fin_r1_c2 = {"boundary:c1:left:+",   "boundary:c1:left:-",
                            "boundary:c2:left:+",   "boundary:c2:left:-",
                            "initial:c1:r1:+k",     "initial:c1:r1:-k",
                            "initial:c2:r1:+k",     "initial:c2:r1:-k",
                            "trace:c2:interface:+", "trace:c2:interface:-"};
  const V corr_fin_r2_c1 = {"boundary:c1:right:+",  "boundary:c1:right:-",
                            "boundary:c2:right:+",  "boundary:c2:right:-",
                            "initial:c1:r2:+k",     "initial:c1:r2:-k",
                            "initial:c2:r2:+k",     "initial:c2:r2:-k",
                            "trace:c1:interface:+", "trace:c1:interface:-"};
  const V corr_fin_r2_c2 = {"boundary:c1:right:+",  "boundary:c1:right:-",
                            "boundary:c2:right:+",  "boundary:c2:right:-",
                            "initial:c1:r2:+k",     "initial:c1:r2:-k",
                            "initial:c2:r2:+k",     "initial:c2:r2:-k",
                            "trace:c2:interface:+", "trace:c2:interface:-"};
  CHECK(slots({TermVariant::Corrected, true, 1, 1}) == corr_fin_r1_c1);
  CHECK(slots({TermVariant::Corrected, true, 1, 2}) == corr_fin_r1_c2);
  CHECK(slots({TermVariant::Corrected, true, 2, 1}) == corr_fin_r2_c1);
  CHECK(slots({TermVariant::Corrected, true, 2, 2}) == corr_fin_r2_c2);

  // --- Transcribed tables ---
  // First-component half-line lists match the corrected dependency sets, but
  // the second-component half-line lists wrongly read the component-1 trace.
  CHECK(slots({TermVariant::Transcribed, false, 1, 1}) == corr_half_r1_c1);
  CHECK(slots({TermVariant::Transcribed, false, 1, 2}) == corr_half_r1_c1);
  CHECK(slots({TermVariant::Transcribed, false, 2, 1}) == corr_half_r2_c1);
  CHECK(slots({TermVariant::Transcribed, false, 2, 2}) == corr_half_r2_c1);

  // finite r1_c1: the component-2 initial transform is read from region 2
  // instead of region 1 (explicit-region override atoms).
  const V tran_fin_r1_c1 = {"boundary:c1:left:+",   "boundary:c1:left:-",
                            "boundary:c2:left:+",   "boundary:c2:left:-",
                            "initial:c1:r1:+k",     "initial:c1:r1:-k",
                            "initial:c2:r2:+k",     "initial:c2:r2:-k",
                            "trace:c1:interface:+", "trace:c1:interface:-"};
  // finite c2 lists: no trace dependency at all and only one branch of each
  // boundary transform survives.
  const V tran_fin_r1_c2 = {"boundary:c1:left:-", "boundary:c2:left:-",
                            "initial:c1:r1:+k",   "initial:c1:r1:-k",
                            "initial:c2:r1:+k",   "initial:c2:r1:-k"};
  const V tran_fin_r2_c2 = {"boundary:c1:right:-", "boundary:c2:right:-",
                            "initial:c1:r2:+k",    "initial:c1:r2:-k",
                            "initial:c2:r2:+k",    "initial:c2:r2:-k"};
  CHECK(slots({TermVariant::Transcribed, true, 1, 1}) == tran_fin_r1_c1);
  CHECK(slots({TermVariant::Transcribed, true, 1, 2}) == tran_fin_r1_c2);
  CHECK(slots({TermVariant::Transcribed, true, 2, 1}) == corr_fin_r2_c1);
  CHECK(slots({TermVariant::Transcribed, true, 2, 2}) == tran_fin_r2_c2);
}

TEST_CASE("first-component representations never read the second-component trace") {
  for (int v = 0; v < 2; ++v) {
    const TermVariant variant = v == 0 ? TermVariant::Corrected : TermVariant::Transcribed;
    for (bool finite : {false, true}) {
      for (int r = 1; r <= 2; ++r) {
        for (const std::string& slot : slots({variant, finite, r, 1})) {
          CAPTURE(v, finite, r, slot);
          CHECK(slot.rfind("trace:c2", 0) == std::string::npos);
        }
      }
    }
  }
}

TEST_CASE("interval phases attach only to edge transforms") {
  // Corrected tables: every edge-data term carries phase +1 or -1 and every
  // initial/trace term carries phase 0.  The transcribed tables preserve that
  // rule except for exactly one zero-phase edge term in each damaged
  // second-component finite list.
  int transcribed_zero_phase_edges = 0;
  for (int v = 0; v < 2; ++v) {
    const TermVariant variant = v == 0 ? TermVariant::Corrected : TermVariant::Transcribed;
    for (bool finite : {false, true}) {
      for (int r = 1; r <= 2; ++r) {
        for (int c = 1; c <= 2; ++c) {
          const TermList& list = utm::term_list(variant, finite, r, c);
          for (const IntegrandTerm& term : list.terms) {
            CAPTURE(v, list.key, term.atom_name, term.interval_phase);
            if (!finite) {
              CHECK(term.interval_phase == 0);
              continue;
            }
            if (term.atom.kind != TermAtom::Kind::EdgeData) {
              CHECK(term.interval_phase == 0);
            } else if (term.interval_phase == 0) {
              CHECK(v == 1);
              CHECK(c == 2);
              ++transcribed_zero_phase_edges;
            } else {
              CHECK((term.interval_phase == 1 || term.interval_phase == -1));
            }
          }
        }
      }
    }
  }
  CHECK(transcribed_zero_phase_edges == 2);
}

TEST_CASE("tail-subtraction gate activates only for internally consistent lists") {
  for (double m : {0.5, 2.0}) {
    CAPTURE(m);
    // Corrected: always active; half-line lists collapse to one group, finite
    // lists need five (interface trace plus two branches x two edges).
    for (int r = 1; r <= 2; ++r) {
      for (int c = 1; c <= 2; ++c) {
        const SubtractionPlan half =
            utm::build_subtraction_plan(utm::term_list(TermVariant::Corrected, false, r, c), m);
        CHECK(half.active);
        CHECK(half.groups.size() == 1);
        const SubtractionPlan fin =
            utm::build_subtraction_plan(utm::term_list(TermVariant::Corrected, true, r, c), m);
        CHECK(fin.active);
        CHECK(fin.groups.size() == 5);
      }
    }
    // Transcribed: the broken branch pairings disable the gate everywhere
    // except finite r2_c1, the one list transcription left intact.
    for (bool finite : {false, true}) {
      for (int r = 1; r <= 2; ++r) {
        for (int c = 1; c <= 2; ++c) {
          const SubtractionPlan plan =
              utm::build_subtraction_plan(utm::term_list(TermVariant::Transcribed, finite, r, c), m);
          CAPTURE(finite, r, c);
          const bool expect_active = finite && r == 2 && c == 1;
          CHECK(plan.active == expect_active);
          CHECK(plan.groups.size() == (expect_active ? 5u : 0u));
        }
      }
    }
  }
}

TEST_CASE("coefficient expressions evaluate and reject malformed input") {
  const auto val = [](const char* txt, double k, double a, double m) {
    return CoeffExpr::parse(txt)(k, a, m);
  };
  CHECK(std::abs(val("k/(2*pi*alpha)", 2.0, 3.0, 1.0) - std::complex<double>(1.0 / (3.0 * kPi))) <
        1e-16);
  CHECK(std::abs(val("-1/(4*pi)", 7.0, 9.0, 2.0) - std::complex<double>(-1.0 / (4.0 * kPi))) <
        1e-16);
  CHECK(std::abs(val("I*m/(4*pi*alpha)", 1.0, 2.0, 1.5) -
                 std::complex<double>(0.0, 1.5 / (8.0 * kPi))) < 1e-16);
  CHECK(val("k**2", 3.0, 1.0, 1.0) == std::complex<double>(9.0, 0.0));
  CHECK(val("-k", 2.0, 1.0, 1.0) == std::complex<double>(-2.0, 0.0));
  // sqrt(k**2 + m**2) must reproduce the dispersion argument exactly.
  const double k = 0.37, m = 1.3;
  CHECK(std::abs(val("sqrt(k**2+m**2)", k, 0.0, m) - std::complex<double>(std::hypot(k, m))) <
        1e-15);

  for (const char* bad : {"k/(2*pi*beta)", "1.5*k", "k**", "(k", "sqrt k", "k @ m", "k k"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(CoeffExpr::parse(bad), std::invalid_argument);
  }
}
