#include "hpd/duality_checks.hpp"

#include <algorithm>

namespace hpd {
namespace {

constexpr const char* kInvariantLevel =
    "invariant-level consequence; not a proof of an equivalence";

InvariantExpr n_of(long long v) { return InvariantExpr(v); }

std::string arg_list(const std::vector<LefschetzProfile>& ps) {
  std::string out;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i) out += ',';
    out += ps[i].name();
  }
  return out;
}

SodExpr join_sod(const std::vector<LefschetzProfile>& ps,
                 const std::vector<InvariantExpr>& comps) {
  std::vector<CategoryTerm> atoms;
  for (const auto& p : ps) atoms.push_back(CategoryTerm::atom(p.name()));
  const CategoryTerm join = CategoryTerm::join(std::move(atoms));
  SodExpr sod{join.to_string(), std::string(base::kV), {}};
  for (std::size_t i = 0; i < comps.size(); ++i)
    sod.blocks.push_back({CategoryTerm::component(join, static_cast<int>(i)),
                          static_cast<int>(i), comps[i]});
  return sod;
}

std::string sod_nh_warning() {
  return "n-universal hyperplane blocks pair C_I with the Lefschetz "
         "components of the factors outside I";
}

int positive_option(const CheckCall& call, std::string_view key) {
  const InvariantExpr* v = call.option(key);
  SourceSpan where = call.span;
  for (std::size_t i = 0; i < call.options.size(); ++i)
    if (call.options[i].first == key && i < call.option_spans.size())
      where = call.option_spans[i];
  if (!v)
    throw HpdError(ErrorKind::InvalidArgument,
                   call.name + " needs the option " + std::string(key) + "=",
                   call.span);
  auto c = v->constant_value();
  if (!c || *c < 1 || *c > 64)
    throw HpdError(ErrorKind::InvalidArgument,
                   std::string(key) + " must be an integer in 1..64, got " +
                       v->to_string(),
                   where);
  return static_cast<int>(*c);
}

}  // namespace

std::string_view status_name(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Underdetermined: return "underdetermined";
  }
  return "?";
}

std::optional<Assignment> find_witness(const InvariantExpr& difference) {
  if (difference.is_zero()) return std::nullopt;
  const auto syms = difference.symbols();
  const std::vector<std::string> names(syms.begin(), syms.end());
  std::uint32_t bound = 5;
  for (const auto& s : names) bound = std::max(bound, difference.degree_in(s));
  // A nonzero polynomial of degree <= bound in each variable cannot vanish on
  // the whole grid {0..bound}^k.
  std::vector<std::uint32_t> point(names.size(), 0);
  for (;;) {
    Assignment a;
    for (std::size_t i = 0; i < names.size(); ++i) a[names[i]] = point[i];
    if (difference.evaluate(a) != 0) return a;
    std::size_t pos = 0;
    while (pos < point.size() && point[pos] == bound) point[pos++] = 0;
    if (pos == point.size()) break;
    ++point[pos];
  }
  return std::nullopt;
}

CheckResult CheckResult::compare(std::string name, InvariantExpr lhs,
                                 InvariantExpr rhs,
                                 std::vector<std::string> notes) {
  CheckResult r;
  r.name = std::move(name);
  r.notes = std::move(notes);
  if (lhs == rhs) {
    r.status = CheckStatus::Pass;
  } else {
    r.status = CheckStatus::Fail;
    r.witness = find_witness(lhs - rhs);
  }
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  return r;
}

CheckResult CheckResult::underdetermined(std::string name,
                                         std::string reason) {
  CheckResult r;
  r.name = std::move(name);
  r.status = CheckStatus::Underdetermined;
  r.notes.push_back(std::move(reason));
  return r;
}

LefschetzProfile projective_space_profile(const std::string& name, int n,
                                          int ambient) {
  std::vector<InvariantExpr> prims(n);
  prims.back() = 1;
  return LefschetzProfile::build(name, ambient, std::move(prims));
}

CheckOutcome check_main_theorem(const LefschetzProfile& p,
                                const LefschetzProfile& q, const Workspace& ws,
                                const EngineOptions& options,
                                const std::optional<InvariantExpr>& htotal) {
  const std::string name = "main_theorem(" + p.name() + "," + q.name() + ")";
  p.require_moderate("main_theorem");
  q.require_moderate("main_theorem");
  if (p.ambient() != q.ambient())
    throw HpdError(ErrorKind::AmbientMismatch,
                   name + ": categories live over different projective spaces");
  const int N = p.ambient();
  CheckOutcome out;

  std::optional<NHyperplaneResult> nh;
  std::string nh_reason;
  try {
    nh = n_hyperplane_sod({p, q}, ws, htotal);
  } catch (const HpdError& e) {
    if (e.kind() != ErrorKind::Underdetermined) throw;
    nh_reason = e.message();
  }
  const auto e = ws.intersection(p.name(), q.name(), N);
  if (!nh || !e) {
    std::string reason = !e ? "intersection of '" + p.name() + "' and '" +
                                  q.name() + "' is not declared"
                            : nh_reason;
    out.results.push_back(CheckResult::underdetermined(name, reason));
    if (nh) out.sods.push_back(nh->sod);
    return out;
  }
  const JoinResult join = join_profile_with(p, q, *e, options);
  const InvariantExpr lhs =
      hpd_total_of_components(join.component_values(), N);
  std::vector<std::string> notes{
      kInvariantLevel,
      "lhs: HPD total of the categorical join, whose components are " +
          to_string(join.component_values()),
      "rhs: n-HPD invariant with n-universal hyperplane total " +
          nh->h_total.to_string() + " (" + nh->h_total_source + ")",
      "fiber product of the duals over P(V*), derived: " +
          nh->c_invariant.to_string()};
  out.results.push_back(
      CheckResult::compare(name, lhs, nh->c_invariant, std::move(notes)));
  out.sods.push_back(join.sod);
  out.sods.push_back(nh->sod);
  out.warnings.push_back(sod_nh_warning());
  return out;
}

CheckOutcome check_n_hpd_center(const std::vector<LefschetzProfile>& profiles,
                                const Workspace& ws,
                                const std::optional<InvariantExpr>& htotal) {
  const std::string name = "n_hpd_center(" + arg_list(profiles) + ")";
  for (const auto& p : profiles) p.require_moderate("n_hpd_center");
  const int N = profiles.front().ambient();
  CheckOutcome out;

  const auto bars = n_join_profile(profiles, ws);
  InvariantExpr centers(1);
  for (const auto& p : profiles) centers *= p.component(0);
  out.results.push_back(CheckResult::compare(
      name + ".center", bars.front(), centers,
      {kInvariantLevel,
       "lhs: center of the n-fold join; rhs: product of the centers"}));
  out.sods.push_back(join_sod(profiles, bars));

  const int join_length = static_cast<int>(bars.size());
  if (join_length >= N) {
    out.results.push_back(CheckResult::underdetermined(
        name + ".total", "the join has length " + std::to_string(join_length) +
                             " >= N = " + std::to_string(N) +
                             " and is not moderate"));
  } else {
    try {
      const auto nh = n_hyperplane_sod(profiles, ws, htotal);
      out.results.push_back(CheckResult::compare(
          name + ".total", hpd_total_of_components(bars, N), nh.c_invariant,
          {kInvariantLevel,
           "lhs: HPD total of the n-fold join; rhs: n-HPD invariant (" +
               nh.h_total_source + ")"}));
      out.sods.push_back(nh.sod);
      if (profiles.size() >= 2) out.warnings.push_back(sod_nh_warning());
    } catch (const HpdError& e) {
      if (e.kind() != ErrorKind::Underdetermined) throw;
      out.results.push_back(
          CheckResult::underdetermined(name + ".total", e.message()));
    }
  }

  std::vector<std::string> missing;
  InvariantExpr dual_centers(1);
  int ell = 0;
  for (const auto& p : profiles) {
    const LefschetzProfile* d = ws.dual(p.name());
    if (!d) {
      missing.push_back(p.name());
      continue;
    }
    dual_centers *= d->component(0);
    ell += d->length();
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    out.results.push_back(CheckResult::underdetermined(
        name + ".dual_center", "no dual profile declared for " + list));
  } else {
    std::vector<std::string> notes{
        kInvariantLevel,
        "lhs: product of the declared dual centers; rhs: center of the join",
        "n-HPD length from the declared duals: " + std::to_string(ell)};
    if (ell >= N)
      notes.push_back("that length is not below N = " + std::to_string(N));
    out.results.push_back(CheckResult::compare(
        name + ".dual_center", dual_centers, bars.front(), std::move(notes)));
  }
  return out;
}

CheckOutcome check_cone_part1(const LefschetzProfile& p, int n2,
                              const Workspace& ws) {
  const std::string name =
      "cone_part1(" + p.name() + ",n2=" + std::to_string(n2) + ")";
  p.require_moderate("cone_part1");
  const int n1 = p.ambient();
  const int N = n1 + n2;
  const InvariantExpr lhs = hpd_total(p.with_ambient(N));

  InvariantExpr dual_total;
  InvariantExpr dual_center;
  std::string route;
  if (const LefschetzProfile* d = ws.dual(p.name())) {
    dual_total = d->total();
    dual_center = d->component(0);
    route = "declared dual";
  } else {
    dual_total = hpd_total(p);
    dual_center = p.component(0);
    route = "dual total and center derived from the profile";
  }
  const auto space = projective_space_profile("P(V2*)", n2, N);
  const InvariantExpr rhs = n_join_total({dual_total, space.total()},
                                         {dual_center, space.component(0)});
  CheckOutcome out;
  out.results.push_back(CheckResult::compare(
      name, lhs, rhs,
      {kInvariantLevel,
       "lhs: HPD total over P(V) with N = " + std::to_string(N) +
           "; rhs: total of the join of the dual over P(V1*) with P(V2*)",
       route}));
  return out;
}

CheckOutcome check_cone_part2(const LefschetzProfile& p, int n2,
                              const Workspace& ws) {
  (void)ws;
  const std::string name =
      "cone_part2(" + p.name() + ",n2=" + std::to_string(n2) + ")";
  p.require_moderate("cone_part2");
  const int N = p.ambient() + n2;
  const auto space = projective_space_profile("P(V2)", n2, N);
  const auto comps =
      join_bar_components({p.primitives(), space.primitives()});
  if (static_cast<int>(comps.size()) >= N)
    throw HpdError(ErrorKind::JoinNotModerate,
                   name + ": the join has length " +
                       std::to_string(comps.size()) + " >= N = " +
                       std::to_string(N));
  CheckOutcome out;
  out.results.push_back(CheckResult::compare(
      name, hpd_total_of_components(comps, N), hpd_total(p),
      {kInvariantLevel,
       "lhs: HPD total over P(V) of the join with P(V2), components " +
           to_string(comps) + "; rhs: HPD total over P(V1)"}));
  out.sods.push_back(join_sod({p, space.with_ambient(N)}, comps));
  return out;
}

CheckOutcome check_join_linear(const std::vector<LefschetzProfile>& profiles,
                               const Workspace& ws) {
  const std::string name = "join_linear(" + arg_list(profiles) + ")";
  int N = 0;
  for (const auto& p : profiles) {
    p.require_moderate("join_linear");
    N += p.ambient();
  }
  CheckOutcome out;

  std::vector<std::vector<InvariantExpr>> lists;
  std::vector<LefschetzProfile> lifted;
  for (const auto& p : profiles) {
    lists.push_back(p.primitives());
    lifted.push_back(p.with_ambient(N));
  }
  const auto comps = join_bar_components(lists);

  // Join of the small duals over P(V*).
  InvariantExpr dual_join_total;
  std::string route;
  bool all_declared = true;
  for (const auto& p : profiles)
    if (!ws.dual(p.name())) all_declared = false;
  if (all_declared) {
    std::vector<std::vector<InvariantExpr>> dual_lists;
    for (const auto& p : profiles)
      dual_lists.push_back(ws.dual(p.name())->primitives());
    for (const auto& v : join_bar_components(dual_lists)) dual_join_total += v;
    route = "join of the declared duals";
  } else {
    std::vector<InvariantExpr> totals;
    std::vector<InvariantExpr> centers;
    for (const auto& p : profiles) {
      totals.push_back(hpd_total(p));
      centers.push_back(p.component(0));
    }
    dual_join_total = n_join_total(totals, centers);
    route = "small dual totals and centers derived from the profiles";
  }

  out.results.push_back(CheckResult::compare(
      name + ".join_dual", hpd_total_of_components(comps, N), dual_join_total,
      {kInvariantLevel,
       "lhs: HPD total over P(V), N = " + std::to_string(N) +
           ", of the join with components " + to_string(comps) +
           "; rhs: total of the join of the small duals",
       route}));
  out.sods.push_back(join_sod(lifted, comps));

  // The summands sit in complementary linear subspaces, so every subset is
  // disjoint.
  const int n = static_cast<int>(profiles.size());
  std::map<std::vector<int>, InvariantExpr> totals;
  for (unsigned s = 1; s < (1U << n); ++s) {
    std::vector<int> idx;
    InvariantExpr prod = 1;
    for (int k = 0; k < n; ++k)
      if (s & (1U << k)) {
        idx.push_back(k);
        prod *= profiles[k].total();
      }
    if (idx.size() >= 2)
      totals[idx] = n_of(N - static_cast<long long>(idx.size())) * prod;
  }
  const auto nh = n_hyperplane_sod_with(lifted, totals, "disjoint");
  out.results.push_back(CheckResult::compare(
      name + ".fiber_product", nh.c_invariant, dual_join_total,
      {kInvariantLevel,
       "lhs: n-HPD invariant over P(V*); rhs: total of the join of the small "
       "duals",
       route}));
  out.sods.push_back(nh.sod);
  return out;
}

CheckOutcome check_dual_profile(const LefschetzProfile& p,
                                const LefschetzProfile* declared_dual) {
  const std::string name = "dual_profile(" + p.name() + ")";
  CheckOutcome out;
  if (!declared_dual) {
    out.results.push_back(CheckResult::underdetermined(
        name, "no dual profile declared for '" + p.name() + "'"));
    return out;
  }
  p.require_moderate("dual_profile");
  declared_dual->require_moderate("dual_profile");
  const auto& d = *declared_dual;
  out.results.push_back(CheckResult::compare(
      name + ".total", d.total(), hpd_total(p),
      {"lhs: total of the declared dual; rhs: HPD total of " + p.name()}));
  out.results.push_back(CheckResult::compare(
      name + ".center", d.component(0), p.component(0),
      {"lhs: declared dual center; rhs: center of " + p.name()}));
  out.results.push_back(CheckResult::compare(
      name + ".double_dual", hpd_total(d), p.total(),
      {"lhs: HPD total of the declared dual; rhs: total of " + p.name()}));
  return out;
}

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{
      "main_theorem", "n_hpd_center", "cone_part1",
      "cone_part2",   "join_linear",  "dual_profile"};
  return names;
}

void validate_check(const CheckCall& call, const Workspace& ws) {
  struct Shape {
    std::size_t min_args;
    std::size_t max_args;
    std::vector<std::string> keys;
  };
  static const std::map<std::string, Shape> shapes{
      {"main_theorem", {2, 2, {"htotal"}}},
      {"n_hpd_center", {1, 16, {"htotal"}}},
      {"cone_part1", {1, 1, {"n2"}}},
      {"cone_part2", {1, 1, {"n2"}}},
      {"join_linear", {1, 16, {}}},
      {"dual_profile", {1, 1, {}}},
  };
  auto it = shapes.find(call.name);
  if (it == shapes.end())
    throw HpdError(ErrorKind::UnknownCheck, "unknown check '" + call.name + "'",
                   call.span);
  const Shape& shape = it->second;
  if (call.args.size() < shape.min_args || call.args.size() > shape.max_args)
    throw HpdError(ErrorKind::InvalidArgument,
                   call.name + " takes " + std::to_string(shape.min_args) +
                       (shape.min_args == shape.max_args
                            ? ""
                            : " to " + std::to_string(shape.max_args)) +
                       " categories, got " + std::to_string(call.args.size()),
                   call.span);
  for (std::size_t i = 0; i < call.args.size(); ++i)
    if (!ws.categories.count(call.args[i]))
      throw HpdError(ErrorKind::UnknownCategory,
                     "unknown category '" + call.args[i] + "'",
                     i < call.arg_spans.size() ? call.arg_spans[i] : call.span);
  for (std::size_t i = 0; i < call.options.size(); ++i) {
    const auto& key = call.options[i].first;
    const SourceSpan span =
        i < call.option_spans.size() ? call.option_spans[i] : call.span;
    if (std::find(shape.keys.begin(), shape.keys.end(), key) ==
        shape.keys.end())
      throw HpdError(ErrorKind::InvalidArgument,
                     call.name + " has no option '" + key + "'", span);
    for (std::size_t j = 0; j < i; ++j)
      if (call.options[j].first == key)
        throw HpdError(ErrorKind::DuplicateDeclaration,
                       "option '" + key + "' given twice", span);
  }
  if (call.name == "cone_part1" || call.name == "cone_part2")
    positive_option(call, "n2");
}

CheckOutcome run_check(const CheckCall& call, const Workspace& ws,
                       const EngineOptions& options) {
  try {
    validate_check(call, ws);
    std::vector<LefschetzProfile> ps;
    for (const auto& a : call.args) ps.push_back(ws.category(a));
    std::optional<InvariantExpr> htotal;
    if (const InvariantExpr* h = call.option("htotal")) htotal = *h;

    if (call.name == "main_theorem")
      return check_main_theorem(ps[0], ps[1], ws, options, htotal);
    if (call.name == "n_hpd_center")
      return check_n_hpd_center(ps, ws, htotal);
    if (call.name == "cone_part1")
      return check_cone_part1(ps[0], positive_option(call, "n2"), ws);
    if (call.name == "cone_part2")
      return check_cone_part2(ps[0], positive_option(call, "n2"), ws);
    if (call.name == "join_linear") return check_join_linear(ps, ws);
    return check_dual_profile(ps[0], ws.dual(ps[0].name()));
  } catch (const HpdError& e) {
    throw e.located(call.span);
  }
}

Json to_json(const CheckResult& result) {
  Json j;
  j["name"] = result.name;
  j["lhs"] = result.lhs ? result.lhs->to_string() : "?";
  j["rhs"] = result.rhs ? result.rhs->to_string() : "?";
  j["status"] = std::string(status_name(result.status));
  if (result.witness) {
    Json w = Json::object();
    for (const auto& [sym, value] : *result.witness) {
      if (value >= std::numeric_limits<std::int64_t>::min() &&
          value <= std::numeric_limits<std::int64_t>::max())
        w[sym] = static_cast<std::int64_t>(value);
      else
        w[sym] = value.str();
    }
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  j["notes"] = Json(result.notes);
  return j;
}

}  // namespace hpd
