#pragma once

// Machine check of the five-dimensional characteristic-3 one-step loop.
//
// Each check recomputes its claim from the embedded fixtures and records a
// witness (determinants, decompositions, certificate matrices) so that a
// failing run shows exactly which value disagreed.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "nashloop/fixtures.hpp"
#include "nashloop/iso.hpp"
#include "nashloop/nash.hpp"
#include "nashloop/search.hpp"

namespace nashloop {

struct LedgerCheck {
  std::size_t index = 0;
  std::string name;
  bool passed = false;
  nlohmann::ordered_json witness = nlohmann::ordered_json::object();
};

struct VerificationLedger {
  std::vector<LedgerCheck> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
  }

  const LedgerCheck* first_failure() const {
    for (const auto& c : checks)
      if (!c.passed) return &c;
    return nullptr;
  }

  std::string render_text() const {
    std::ostringstream os;
    for (const auto& c : checks)
      os << (c.passed ? "PASS" : "FAIL") << "  " << c.index << ". " << c.name << '\n';
    os << (passed() ? "all checks passed" : "verification FAILED") << '\n';
    if (const auto* f = first_failure())
      os << "first failing check: " << f->index << ". " << f->name << '\n'
         << "witness: " << f->witness.dump() << '\n';
    return os.str();
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["status"] = passed() ? "pass" : "fail";
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
      nlohmann::ordered_json cj;
      cj["index"] = c.index;
      cj["name"] = c.name;
      cj["status"] = c.passed ? "pass" : "fail";
      cj["witness"] = c.witness;
      j["checks"].push_back(std::move(cj));
    }
    return j;
  }
};

struct VerifyOptions {
  /// The ninth Hilbert basis element as stated by the fixture.
  LatticeVector h9 = fixtures::h9();
  /// Characteristic used for the replacement-determinant table.
  long long table_characteristic = 3;
  unsigned threads = 1;
};

namespace detail {

inline std::string vstr(const LatticeVector& v) { return v.str(); }

inline std::vector<std::string> vstrs(const std::vector<LatticeVector>& vs) {
  std::vector<std::string> out;
  for (const auto& v : vs) out.push_back(v.str());
  return out;
}

inline std::string mstr(const IntMatrix& m) {
  std::ostringstream os;
  os << m;
  return os.str();
}

inline std::string expr_str(const fixtures::HExpr& e) {
  std::string s;
  for (auto [i, c] : e) {
    if (!s.empty() || c < 0) s += (c < 0 ? "-" : "+");
    if (c != 1 && c != -1) s += std::to_string(c < 0 ? -c : c);
    s += "h" + std::to_string(i);
  }
  return s;
}

class LoopVerifier {
 public:
  explicit LoopVerifier(VerifyOptions options)
      : options_(std::move(options)), h_(fixtures::h_vectors(options_.h9)) {
    auto b = fixtures::matrix_B();
    cone_ = Cone::from_generators(b.columns());
    S_ = AffineSemigroup::saturation_of(cone_);
    for (int i : fixtures::chart_subset()) A_.push_back(h_[static_cast<std::size_t>(i)]);
  }

  VerificationLedger run() {
    VerificationLedger ledger;
    auto add = [&](std::string name, auto&& fn) {
      LedgerCheck c;
      c.index = ledger.checks.size() + 1;
      c.name = std::move(name);
      try {
        c.passed = fn(c.witness);
      } catch (const std::exception& ex) {
        c.passed = false;
        c.witness["exception"] = ex.what();
      }
      ledger.checks.push_back(std::move(c));
    };
    add("S is pointed with grading L = x1+...+x5", [&](auto& w) { return pointed(w); });
    add("Hilbert basis of S is {h1..h9}; sigma_1..sigma_7 unimodular in Cone(B)",
        [&](auto& w) { return hilbert(w); });
    add("det_p(h1,h2,h4,h5,h6) = 2 and the 20-entry replacement table",
        [&](auto& w) { return table(w); });
    add("G_A equals H(S) plus blocks of sizes 4,3,2,4,2", [&](auto& w) { return g_set_check(w); });
    add("decomposition identities and h8-h2 = h9-h4", [&](auto& w) { return decompositions(w); });
    add("R = S_A by mutual membership", [&](auto& w) { return r_equals(w); });
    add("U is a certificate S -> S_A with all nine images", [&](auto& w) { return u_check(w); });
    add("S_A is pointed and saturated", [&](auto& w) { return saturated(w); });
    add("search finds a one-step loop in characteristic 3", [&](auto& w) { return search(w); });
    add("the chart is a non-normalized Nash chart isomorphic to S",
        [&](auto& w) { return non_normalized(w); });
    add("binomial generators are balanced", [&](auto& w) { return binomials(w); });
    return ledger;
  }

 private:
  using json = nlohmann::ordered_json;

  const BlowupChart& the_chart() {
    if (!chart_) chart_ = chart(S_, A_, Characteristic(3), true);
    return *chart_;
  }

  AffineSemigroup chart_H() const {
    std::vector<LatticeVector> gens;
    for (const auto& e : fixtures::chart_generators()) gens.push_back(fixtures::evaluate(e, h_));
    return AffineSemigroup::generated_by(5, std::move(gens));
  }

  bool pointed(json& w) {
    LatticeVector L{1, 1, 1, 1, 1};
    bool ok = cone_.is_pointed();
    w["pointed"] = ok;
    json values = json::array();
    for (std::size_t i = 1; i <= 8; ++i) {
      Integer v = dot(L, h_[i]);
      values.push_back(v.str());
      ok = ok && (i <= 5 ? v == 1 : v >= 2);
    }
    w["L(h1..h8)"] = values;
    for (const auto& r : cone_.rays()) ok = ok && dot(L, r) > 0;
    return ok;
  }

  bool hilbert(json& w) {
    auto hb = S_.hilbert_basis();
    std::vector<LatticeVector> expected(h_.begin() + 1, h_.end());
    std::sort(expected.begin(), expected.end());
    w["computed"] = vstrs(hb);
    w["expected"] = vstrs(expected);
    bool ok = hb == expected;

    LatticeVector L{1, 1, 1, 1, 1};
    Rational sum = 0;
    json dets = json::array();
    for (const auto& sigma : fixtures::subdivision()) {
      std::vector<LatticeVector> cols;
      Integer denom = 1;
      for (int i : sigma) {
        cols.push_back(h_[static_cast<std::size_t>(i)]);
        denom *= dot(L, cols.back());
        ok = ok && cone_.contains(cols.back());
      }
      Integer d = det(IntMatrix(5, cols));
      dets.push_back(d.str());
      ok = ok && abs(d) == 1;
      sum += Rational(Integer(abs(d)), denom);
    }
    Rational vol = cone_.sliced_volume(L);
    w["det(sigma_i)"] = dets;
    w["sliced volume of subdivision"] = sum.str();
    w["sliced volume of Cone(B)"] = vol.str();
    return ok && sum == vol;
  }

  bool table(json& w) {
    Characteristic p(options_.table_characteristic);
    IntMatrix a = column_matrix(A_);
    Integer base = det_p(a, p);
    w["characteristic"] = p.value();
    w["det_p(A)"] = base.str();
    bool ok = base == 2;
    json entries = json::array();
    std::size_t zeros = 0;
    auto subset = fixtures::chart_subset();
    for (const auto& e : fixtures::determinant_table()) {
      auto pos = static_cast<std::size_t>(std::find(subset.begin(), subset.end(), e.replaced) -
                                          subset.begin());
      IntMatrix m = a;
      m.column(pos) = h_[static_cast<std::size_t>(e.g)];
      Integer v = det_p(m, p);
      bool nonzero = v != 0;
      if (!nonzero) ++zeros;
      ok = ok && nonzero == e.nonzero;
      entries.push_back(json{{"replace", "h" + std::to_string(e.replaced)},
                             {"by", "h" + std::to_string(e.g)},
                             {"value", v.str()},
                             {"expected_nonzero", e.nonzero}});
    }
    w["zeros"] = zeros;
    w["entries"] = entries;
    return ok && zeros == 5;
  }

  bool g_set_check(json& w) {
    const auto& c = the_chart();
    bool ok = true;
    std::vector<LatticeVector> expected_union = S_.hilbert_basis();
    json sizes = json::array();
    auto blocks = fixtures::g_blocks();
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const auto& [hi, gs] = blocks[b];
      std::vector<LatticeVector> expected;
      for (int g : gs) expected.push_back(h_[static_cast<std::size_t>(g)] - h_[static_cast<std::size_t>(hi)]);
      std::sort(expected.begin(), expected.end());
      expected_union.insert(expected_union.end(), expected.begin(), expected.end());
      // chart() orders subset_A like H(S); locate h's block by element
      auto it = std::find(c.subset_A.begin(), c.subset_A.end(), h_[static_cast<std::size_t>(hi)]);
      if (it == c.subset_A.end()) return false;
      const auto& computed = c.g_sets[static_cast<std::size_t>(it - c.subset_A.begin())];
      sizes.push_back(computed.size());
      ok = ok && computed == expected;
    }
    sort_unique(expected_union);
    w["block sizes"] = sizes;
    w["|G_A|"] = c.g_union.size();
    return ok && c.g_union == expected_union;
  }

  bool decompositions(json& w) {
    json rows = json::array();
    bool ok = true;
    auto H = chart_H();
    // terms may be elements of H or left-hand sides of other identities
    std::vector<LatticeVector> known;
    for (const auto& e : fixtures::chart_generators()) known.push_back(fixtures::evaluate(e, h_));
    auto ids = fixtures::decompositions();
    std::vector<bool> reached(ids.size(), false);
    for (bool grew = true; grew;) {
      grew = false;
      for (std::size_t i = 0; i < ids.size(); ++i) {
        if (reached[i]) continue;
        bool all = std::all_of(ids[i].rhs.begin(), ids[i].rhs.end(), [&](const auto& t) {
          return std::find(known.begin(), known.end(), fixtures::evaluate(t, h_)) != known.end();
        });
        if (!all) continue;
        reached[i] = grew = true;
        known.push_back(fixtures::evaluate(ids[i].lhs, h_));
      }
    }
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const auto& d = ids[i];
      LatticeVector rhs(5);
      std::string text = expr_str(d.lhs) + " =";
      for (std::size_t t = 0; t < d.rhs.size(); ++t) {
        rhs += fixtures::evaluate(d.rhs[t], h_);
        text += std::string(t ? " + " : " ") + "(" + expr_str(d.rhs[t]) + ")";
      }
      bool holds = fixtures::evaluate(d.lhs, h_) == rhs;
      ok = ok && holds && reached[i];
      rows.push_back(json{{"identity", text}, {"holds", holds}, {"terms reduce to H", bool(reached[i])}});
    }
    bool eq = (h_[8] - h_[2]) == (h_[9] - h_[4]);
    w["identities"] = rows;
    w["h8-h2 = h9-h4"] = eq;
    json missing = json::array();
    for (const auto& g : the_chart().g_union)
      if (!H.contains(g)) missing.push_back(g.str());
    w["G_A elements outside <H>"] = missing;
    return ok && eq && missing.empty() && rows.size() == 14;
  }

  bool r_equals(json& w) {
    auto H = chart_H();
    bool eq = semigroups_equal(the_chart().chart_semigroup, H);
    w["minimal generators of S_A"] = vstrs(the_chart().chart_semigroup.hilbert_basis());
    w["H"] = vstrs(H.hilbert_basis());
    return eq;
  }

  bool u_check(json& w) {
    const auto& c = the_chart();
    if (!c.normalized_chart) return false;
    IsoCertificate cert{fixtures::matrix_U(), {}};
    w["U"] = mstr(cert.matrix);
    w["det(U)"] = det(cert.matrix).str();
    bool ok = verify_certificate(S_, *c.normalized_chart, cert);
    json images = json::array();
    for (const auto& [i, e] : fixtures::u_images()) {
      LatticeVector lhs = cert.matrix * h_[static_cast<std::size_t>(i)];
      bool holds = lhs == fixtures::evaluate(e, h_);
      ok = ok && holds;
      images.push_back(json{{"equation", "U(h" + std::to_string(i) + ") = " + expr_str(e)},
                            {"holds", holds}});
    }
    w["images"] = images;
    auto found = find_isomorphism(S_, *c.normalized_chart);
    w["independent certificate"] = found ? mstr(found->matrix) : std::string("none");
    return ok && found && verify_certificate(S_, *c.normalized_chart, *found);
  }

  bool saturated(json& w) {
    const auto& c = the_chart();
    bool p = c.chart_semigroup.is_pointed();
    bool s = p && is_saturated(c.chart_semigroup);
    w["pointed"] = p;
    w["saturated"] = s;
    return p && s;
  }

  bool search(json& w) {
    SearchConfig cfg;
    cfg.characteristic = Characteristic(3);
    cfg.max_depth = 1;
    cfg.cycle_lengths = {1};
    cfg.threads = options_.threads;
    SearchGraph g(cfg);
    std::size_t root = g.add_root(S_);
    g.run();
    auto r = g.report();
    w["nodes"] = r.node_count;
    w["edges"] = r.edges;
    for (const auto& cyc : r.cycles_found) {
      if (cyc.length != 1 || cyc.keys.front() != g.nodes()[root].key || !cyc.verified) continue;
      const auto& e = g.edges()[cyc.edges.front()];
      std::vector<std::string> subset;
      for (auto i : e.subset) subset.push_back(S_.hilbert_basis()[i].str());
      w["chart subset"] = subset;
      w["certificate"] = mstr(e.certificate.matrix);
      return true;
    }
    return false;
  }

  bool non_normalized(json& w) {
    auto c = chart(S_, A_, Characteristic(3), false);
    bool eq = c.pointed && semigroups_equal(c.chart_semigroup, saturate(c.chart_semigroup));
    bool iso = c.pointed && verify_certificate(S_, c.chart_semigroup, IsoCertificate{fixtures::matrix_U(), {}});
    w["S_A equals its saturation"] = eq;
    w["U certifies S -> S_A (non-normalized)"] = iso;
    return eq && iso;
  }

  bool binomials(json& w) {
    json rows = json::array();
    bool ok = true;
    for (const auto& b : fixtures::toric_binomials()) {
      LatticeVector l(5), r(5);
      for (std::size_t i = 1; i <= 9; ++i) {
        l += Integer(b.lhs[i]) * h_[i];
        r += Integer(b.rhs[i]) * h_[i];
      }
      ok = ok && l == r;
      rows.push_back(json{{"lhs", l.str()}, {"rhs", r.str()}, {"balanced", l == r}});
    }
    w["binomials"] = rows;
    return ok && rows.size() == 10;
  }

  VerifyOptions options_;
  std::vector<LatticeVector> h_;
  Cone cone_;
  AffineSemigroup S_;
  std::vector<LatticeVector> A_;
  std::optional<BlowupChart> chart_;
};

}  // namespace detail

inline VerificationLedger verify_paper(VerifyOptions options = {}) {
  return detail::LoopVerifier(std::move(options)).run();
}

}  // namespace nashloop
