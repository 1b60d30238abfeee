#include "hpd/prop.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

namespace hpd {

int Rng::uniform(int lo, int hi) {
  if (hi <= lo) return lo;
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return lo + static_cast<int>(draw % range);
}

namespace {

const char* const kSymbols[] = {"x", "y", "w"};

struct Counterexample {
  InvariantExpr lhs;
  InvariantExpr rhs;
  std::string description;
};

using CaseResult = std::optional<Counterexample>;
using Property = std::function<CaseResult(Rng&, const PropConfig&)>;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

CaseResult differ(const InvariantExpr& lhs, const InvariantExpr& rhs,
                  const std::string& description) {
  if (lhs == rhs) return std::nullopt;
  return Counterexample{lhs, rhs, description};
}

CaseResult differ_lists(const std::vector<InvariantExpr>& a,
                        const std::vector<InvariantExpr>& b,
                        const std::string& description) {
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const InvariantExpr x = i < a.size() ? a[i] : InvariantExpr();
    const InvariantExpr y = i < b.size() ? b[i] : InvariantExpr();
    if (x != y)
      return Counterexample{x, y,
                            description + "; first difference at index " +
                                std::to_string(i)};
  }
  return std::nullopt;
}

CaseResult require(bool ok, const std::string& description) {
  if (ok) return std::nullopt;
  return Counterexample{0, 1, description};
}

std::string describe(const LefschetzProfile& p) {
  return p.name() + " over P(" + std::to_string(p.ambient()) + ") " +
         to_string(p.primitives());
}

int max_length_for(const PropConfig& c, int ambient) {
  return std::max(1, std::min(c.max_length, ambient - 1));
}

int random_ambient(Rng& rng, const PropConfig& c) {
  return rng.uniform(2, c.max_rank);
}

LefschetzProfile shaped(Rng& rng, const PropConfig& c, const std::string& name,
                        int ambient) {
  return random_profile(rng, name, ambient,
                        rng.uniform(1, max_length_for(c, ambient)),
                        c.max_symbols);
}

Workspace pair_workspace(const LefschetzProfile& p, const LefschetzProfile& q,
                         const std::optional<InvariantExpr>& e) {
  Workspace ws;
  ws.categories.emplace(p.name(), p);
  ws.categories.emplace(q.name(), q);
  if (e) {
    ws.intersections.emplace(
        IntersectionKey::make(p.name(), q.name(), p.ambient()), *e);
  } else {
    std::vector<std::string> names{p.name(), q.name()};
    std::sort(names.begin(), names.end());
    ws.disjoint_sets.push_back(names);
  }
  return ws;
}

InvariantExpr random_intersection(Rng& rng, const PropConfig& c) {
  InvariantExpr e = InvariantExpr::symbol("e");
  if (rng.chance(30)) e += random_primitive(rng, c.max_symbols);
  return e;
}

// --- conservation ----------------------------------------------------------

CaseResult prop_projective_bundle(Rng& rng, const PropConfig& c) {
  const int N = random_ambient(rng, c);
  const auto p = shaped(rng, c, "A", N);
  const int r = rng.uniform(1, N);
  const auto sod = projective_bundle_sod(CategoryTerm::atom("A"), p.total(), r);
  return differ(sod.total(), InvariantExpr(r) * p.total(),
                describe(p) + ", r = " + std::to_string(r));
}

CaseResult prop_blowup(Rng& rng, const PropConfig& c) {
  const int N = random_ambient(rng, c);
  const auto p = shaped(rng, c, "A", N);
  const auto z = random_primitive(rng, c.max_symbols);
  const int r = rng.uniform(2, std::max(2, N));
  return differ(blowup_sod(p.total(), z, r).total(),
                p.total() + InvariantExpr(r - 1) * z,
                describe(p) + ", z = " + z.to_string() +
                    ", r = " + std::to_string(r));
}

CaseResult prop_hyperplane(Rng& rng, const PropConfig& c) {
  const int N = random_ambient(rng, c);
  const auto p = shaped(rng, c, "A", N);
  const auto z = random_primitive(rng, c.max_symbols);
  const int r = rng.uniform(2, std::max(2, N));
  return differ(hyperplane_sod(p.total(), z, r).total(),
                z + InvariantExpr(r - 1) * p.total(),
                describe(p) + ", z = " + z.to_string() +
                    ", r = " + std::to_string(r));
}

CaseResult prop_universal_hyperplane(Rng& rng, const PropConfig& c) {
  const int N = random_ambient(rng, c);
  const auto p = shaped(rng, c, "A", N);
  return differ(universal_hyperplane_sod(p).total(),
                InvariantExpr(N - 1) * p.total(), describe(p));
}

CaseResult prop_n_hyperplane(Rng& rng, const PropConfig& c) {
  const int N = rng.uniform(3, std::max(3, c.max_rank));
  const int n = rng.uniform(2, 3);
  std::vector<LefschetzProfile> ps;
  Workspace ws;
  std::vector<std::string> names;
  std::string text;
  for (int k = 0; k < n; ++k) {
    ps.push_back(shaped(rng, c, "A" + std::to_string(k + 1), N));
    ws.categories.emplace(ps.back().name(), ps.back());
    names.push_back(ps.back().name());
    text += (k ? "; " : "") + describe(ps.back());
  }
  InvariantExpr expected;
  if (n == 2 && rng.chance(50)) {
    const auto e = random_intersection(rng, c);
    ws.intersections.emplace(IntersectionKey::make(names[0], names[1], N), e);
    expected = e + InvariantExpr(N - 2) * ps[0].total() * ps[1].total();
    text += "; e = " + e.to_string();
  } else {
    ws.disjoint_sets.push_back(names);
    expected = InvariantExpr(N - n);
    for (const auto& p : ps) expected *= p.total();
    text += "; disjoint";
  }
  return differ(n_hyperplane_sod(ps, ws).sod.total(), expected, text);
}

CaseResult prop_ruled_join(Rng& rng, const PropConfig& c) {
  const int N = random_ambient(rng, c);
  const auto p = shaped(rng, c, "A", N);
  const auto q = shaped(rng, c, "B", N);
  InvariantExpr sum;
  for (const auto& v : ruled_join_components(p, q)) sum += v;
  return differ(sum,
                p.total() * q.component(0) + p.component(0) * q.total(),
                describe(p) + "; " + describe(q));
}

CaseResult prop_join(Rng& rng, const PropConfig& c) {
  const int N = rng.uniform(3, std::max(3, c.max_rank));
  const auto p = shaped(rng, c, "A", N);
  const auto q = shaped(rng, c, "B", N);
  const auto e = random_intersection(rng, c);
  const JoinResult j = join_profile_with(p, q, e, c.engine);
  return differ(j.total, join_conservation_total(j.ruled, e, N),
                describe(p) + "; " + describe(q) + "; e = " + e.to_string());
}

CaseResult prop_refined_blowup(Rng& rng, const PropConfig& c) {
  const int N = random_ambient(rng, c);
  const auto p = shaped(rng, c, "A", N);
  const int ell = rng.uniform(2, N);
  const auto z = random_primitive(rng, c.max_symbols);
  const auto r = refined_blowup_profile(p, ell, z);
  return differ(r.sod.total(), refined_blowup_conservation_total(p, ell, z),
                describe(p) + ", ell = " + std::to_string(ell) +
                    ", z = " + z.to_string());
}

CaseResult prop_twist(Rng& rng, const PropConfig& c) {
  const int N = random_ambient(rng, c);
  const auto p = shaped(rng, c, "A", N);
  const int t = rng.uniform(-6, 6);
  const SodExpr x = universal_hyperplane_sod(p);
  const SodExpr y = twist_sod(x, t);
  if (auto bad = differ(y.total(), x.total(),
                        describe(p) + ", t = " + std::to_string(t)))
    return bad;
  return require(sod_equal(twist_sod(y, -t), x),
                 "twist by " + std::to_string(t) + " and back changed " +
                     describe(p));
}

// --- joins -----------------------------------------------------------------

CaseResult prop_commutativity(Rng& rng, const PropConfig& c) {
  const int N = rng.uniform(3, std::max(3, c.max_rank));
  const auto p = shaped(rng, c, "A", N);
  const auto q = shaped(rng, c, "B", N);
  const auto e = random_intersection(rng, c);
  return differ_lists(join_profile_with(p, q, e, c.engine).component_values(),
                      join_profile_with(q, p, e, c.engine).component_values(),
                      describe(p) + "; " + describe(q));
}

CaseResult prop_associativity(Rng& rng, const PropConfig& c) {
  const int cap = std::min(3, c.max_length);
  std::vector<int> m{rng.uniform(1, cap), rng.uniform(1, cap),
                     rng.uniform(1, cap)};
  const int sum = m[0] + m[1] + m[2];
  const int N = rng.uniform(sum + 1, sum + 4);
  const auto p = random_profile(rng, "P1", N, m[0], c.max_symbols);
  const auto q = random_profile(rng, "P2", N, m[1], c.max_symbols);
  const auto r = random_profile(rng, "P3", N, m[2], c.max_symbols);
  Workspace ws;
  for (const auto* x : {&p, &q, &r}) ws.categories.emplace(x->name(), *x);
  ws.disjoint_sets.push_back({"P1", "P2", "P3"});
  const std::string text =
      describe(p) + "; " + describe(q) + "; " + describe(r);

  auto flat = n_join_profile({p, q, r}, ws);
  flat.resize(N - 1);

  const auto pq = join_as_profile(join_profile_with(p, q, 0, c.engine), "PQ", N);
  const auto left = join_profile_with(pq, r, 0, c.engine).component_values();
  if (auto bad = differ_lists(left, flat, "(P1*P2)*P3 vs flat: " + text))
    return bad;
  const auto qr = join_as_profile(join_profile_with(q, r, 0, c.engine), "QR", N);
  const auto right = join_profile_with(p, qr, 0, c.engine).component_values();
  return differ_lists(right, flat, "P1*(P2*P3) vs flat: " + text);
}

// --- duality ---------------------------------------------------------------

CaseResult from_outcome(const CheckOutcome& o, const std::string& text) {
  for (const auto& r : o.results)
    if (r.status != CheckStatus::Pass)
      return Counterexample{r.lhs.value_or(InvariantExpr()),
                            r.rhs.value_or(InvariantExpr(1)),
                            r.name + ": " + text};
  return std::nullopt;
}

CaseResult prop_main_theorem(Rng& rng, const PropConfig& c) {
  const int N = rng.uniform(3, std::min(7, std::max(3, c.max_rank)));
  const auto draw = [&](const std::string& name) {
    return random_profile(rng, name, N,
                          rng.uniform(1, std::min({3, c.max_length, N - 1})),
                          c.max_symbols);
  };
  const auto p = draw("A");
  const auto q = draw("B");
  std::optional<InvariantExpr> e;
  if (rng.chance(50)) e = random_intersection(rng, c);
  const Workspace ws = pair_workspace(p, q, e);
  const std::string text = describe(p) + "; " + describe(q) +
                           (e ? "; e = " + e->to_string() : "; disjoint");
  const auto pq = check_main_theorem(p, q, ws, c.engine);
  if (auto bad = from_outcome(pq, text)) return bad;
  const auto qp = check_main_theorem(q, p, ws, c.engine);
  return differ(*qp.results[0].lhs, *pq.results[0].lhs, "symmetry: " + text);
}

CaseResult prop_n_hpd_center(Rng& rng, const PropConfig& c) {
  const int n = rng.uniform(1, 3);
  std::vector<int> m;
  int sum = 0;
  for (int k = 0; k < n; ++k) {
    m.push_back(rng.uniform(1, std::min(3, c.max_length)));
    sum += m.back();
  }
  const int N = rng.uniform(sum + 1, sum + 3);
  Workspace ws;
  std::vector<LefschetzProfile> ps;
  std::vector<std::string> names;
  std::string text;
  for (int k = 0; k < n; ++k) {
    ps.push_back(random_profile(rng, "A" + std::to_string(k + 1), N, m[k],
                                c.max_symbols));
    ws.categories.emplace(ps.back().name(), ps.back());
    names.push_back(ps.back().name());
    text += (k ? "; " : "") + describe(ps.back());
  }
  if (n >= 2) ws.disjoint_sets.push_back(names);
  const auto o = check_n_hpd_center(ps, ws);
  for (const auto& r : o.results)
    if (r.status == CheckStatus::Fail)
      return Counterexample{*r.lhs, *r.rhs, r.name + ": " + text};
  return std::nullopt;
}

struct SplitShape {
  int n1;
  int n2;
  LefschetzProfile p;
};

SplitShape split_shape(Rng& rng, const PropConfig& c) {
  const int n1 = rng.uniform(2, 6);
  const int n2 = rng.uniform(1, 5);
  auto p = random_profile(rng, "A", n1,
                          rng.uniform(1, std::min(n1 - 1, c.max_length)),
                          c.max_symbols);
  return {n1, n2, std::move(p)};
}

CaseResult prop_cone_part1(Rng& rng, const PropConfig& c) {
  const auto s = split_shape(rng, c);
  return from_outcome(check_cone_part1(s.p, s.n2, Workspace{}),
                      describe(s.p) + ", N2 = " + std::to_string(s.n2));
}

CaseResult prop_cone_part2(Rng& rng, const PropConfig& c) {
  const auto s = split_shape(rng, c);
  return from_outcome(check_cone_part2(s.p, s.n2, Workspace{}),
                      describe(s.p) + ", N2 = " + std::to_string(s.n2));
}

CaseResult prop_join_linear(Rng& rng, const PropConfig& c) {
  const int n = rng.uniform(1, 3);
  std::vector<LefschetzProfile> ps;
  std::string text;
  for (int k = 0; k < n; ++k) {
    const int nk = rng.uniform(2, k == 0 ? 6 : 5);
    ps.push_back(random_profile(rng, "A" + std::to_string(k + 1), nk,
                                rng.uniform(1, std::min(nk - 1, c.max_length)),
                                c.max_symbols));
    text += (k ? "; " : "") + describe(ps.back());
  }
  return from_outcome(check_join_linear(ps, Workspace{}), text);
}

CaseResult prop_dual_profile(Rng& rng, const PropConfig& c) {
  const int N = random_ambient(rng, c);
  const int m = rng.uniform(1, N - 1);
  InvariantExpr value = random_primitive(rng, c.max_symbols);
  if (value.is_zero()) value = 1;
  std::vector<InvariantExpr> prims(m), dual_prims(N - m);
  prims.back() = value;
  dual_prims.back() = value;
  const auto p = LefschetzProfile::build("A", N, prims);
  const auto d = LefschetzProfile::build("A", N, dual_prims);
  return from_outcome(check_dual_profile(p, &d),
                      describe(p) + " with rectangular dual " +
                          to_string(d.primitives()));
}

CaseResult prop_specialization(Rng& rng, const PropConfig& c) {
  const int N = random_ambient(rng, c);
  const auto p = shaped(rng, c, "A", N);
  Workspace ws;
  ws.categories.emplace("A", p);
  if (auto bad = differ_lists(n_join_profile({p}, ws), p.components(),
                              "n = 1 join: " + describe(p)))
    return bad;
  return require(
      sod_equal(n_hyperplane_sod({p}, ws).sod, universal_hyperplane_sod(p)),
      "n = 1 hyperplane SOD differs from the universal hyperplane: " +
          describe(p));
}

const std::vector<std::pair<std::string, Property>>& registry() {
  static const std::vector<std::pair<std::string, Property>> props{
      {"conservation.projective_bundle", prop_projective_bundle},
      {"conservation.blowup", prop_blowup},
      {"conservation.hyperplane", prop_hyperplane},
      {"conservation.universal_hyperplane", prop_universal_hyperplane},
      {"conservation.n_hyperplane", prop_n_hyperplane},
      {"conservation.ruled_join", prop_ruled_join},
      {"conservation.join", prop_join},
      {"conservation.refined_blowup", prop_refined_blowup},
      {"conservation.twist", prop_twist},
      {"join.commutativity", prop_commutativity},
      {"join.associativity", prop_associativity},
      {"duality.main_theorem", prop_main_theorem},
      {"duality.n_hpd_center", prop_n_hpd_center},
      {"duality.cone_part1", prop_cone_part1},
      {"duality.cone_part2", prop_cone_part2},
      {"duality.join_linear", prop_join_linear},
      {"duality.dual_profile", prop_dual_profile},
      {"specialization", prop_specialization},
  };
  return props;
}

bool selected(const PropConfig& c, const std::string& name) {
  if (c.only.empty()) return true;
  for (const auto& prefix : c.only)
    if (name.compare(0, prefix.size(), prefix) == 0) return true;
  return false;
}

}  // namespace

InvariantExpr random_primitive(Rng& rng, int max_symbols) {
  const int roll = rng.uniform(1, 10);
  if (roll <= 4 || max_symbols == 0) return rng.uniform(0, 3);
  InvariantExpr out = rng.uniform(0, 2);
  for (int s = 0; s < max_symbols; ++s)
    out += InvariantExpr(rng.uniform(0, 2)) *
           InvariantExpr::symbol(kSymbols[s]);
  if (roll == 10 && max_symbols >= 2)
    out += InvariantExpr::symbol(kSymbols[0]) *
           InvariantExpr::symbol(kSymbols[1]);
  return out;
}

LefschetzProfile random_profile(Rng& rng, const std::string& name,
                                int ambient, int length, int max_symbols) {
  std::vector<InvariantExpr> prims;
  for (int j = 0; j < length; ++j)
    prims.push_back(random_primitive(rng, max_symbols));
  return LefschetzProfile::build(name, ambient, std::move(prims));
}

void validate_prop_config(const PropConfig& c) {
  auto bad = [](const std::string& what) {
    throw HpdError(ErrorKind::InvalidArgument, what);
  };
  if (c.cases < 0) bad("--cases must be non-negative");
  if (c.max_length < 1 || c.max_length > 6)
    bad("--max-length must be in 1..6");
  if (c.max_rank < 2 || c.max_rank > 9) bad("--max-rank-v must be in 2..9");
  if (c.max_symbols < 0 || c.max_symbols > 3)
    bad("--max-symbols must be in 0..3");
  for (const auto& prefix : c.only) {
    bool any = false;
    for (const auto& [name, _] : registry())
      if (name.compare(0, prefix.size(), prefix) == 0) any = true;
    if (!any) bad("no property matches '" + prefix + "'");
  }
}

const std::vector<std::string>& property_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, _] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

std::vector<CheckResult> run_properties(const PropConfig& config) {
  validate_prop_config(config);
  std::vector<CheckResult> out;
  for (const auto& [name, property] : registry()) {
    if (!selected(config, name)) continue;
    Rng rng(config.seed * 0x9E3779B97F4A7C15ULL ^ fnv1a(name));
    int passed = 0;
    std::optional<Counterexample> first;
    int first_index = -1;
    for (int i = 0; i < config.cases; ++i) {
      CaseResult r = property(rng, config);
      if (!r) {
        ++passed;
      } else if (!first) {
        first = std::move(r);
        first_index = i;
      }
    }
    const std::string counts = "passed " + std::to_string(passed) + " of " +
                               std::to_string(config.cases) + " cases";
    if (!first) {
      out.push_back(CheckResult::compare("prop:" + name, config.cases,
                                         passed, {counts}));
    } else {
      out.push_back(CheckResult::compare(
          "prop:" + name, first->lhs, first->rhs,
          {counts, "first counterexample (case " +
                       std::to_string(first_index) +
                       "): " + first->description}));
    }
  }
  return out;
}

Report run_prop_report(const PropConfig& config) {
  std::ostringstream key;
  key << "prop seed=" << config.seed << " cases=" << config.cases
      << " max-length=" << config.max_length
      << " max-rank-v=" << config.max_rank
      << " max-symbols=" << config.max_symbols
      << " mutate-jprime-bound=" << config.engine.mutate_jprime_bound;
  for (const auto& o : config.only) key << " only=" << o;
  Report report;
  report.input_digest = sha256_hex(key.str());
  report.checks = run_properties(config);
  return report;
}

}  // namespace hpd
