#include "hpd/sod_engine.hpp"

#include <algorithm>
#include <functional>

namespace hpd {
namespace {

InvariantExpr n_of(long long v) { return InvariantExpr(v); }

void require_positive(int r, int min, const char* what) {
  if (r < min)
    throw HpdError(ErrorKind::InvalidArgument,
                   std::string(what) + " must be at least " +
                       std::to_string(min) + ", got " + std::to_string(r));
}

void require_same_ambient(const std::vector<LefschetzProfile>& profiles) {
  for (const auto& p : profiles)
    if (p.ambient() != profiles.front().ambient())
      throw HpdError(ErrorKind::AmbientMismatch,
                     "categories '" + profiles.front().name() + "' (N = " +
                         std::to_string(profiles.front().ambient()) +
                         ") and '" + p.name() + "' (N = " +
                         std::to_string(p.ambient()) +
                         ") live over different projective spaces");
}

std::vector<CategoryTerm> atoms_of(const std::vector<LefschetzProfile>& ps,
                                   const std::vector<int>& indices) {
  std::vector<CategoryTerm> out;
  for (int k : indices) out.push_back(CategoryTerm::atom(ps[k].name()));
  return out;
}

std::string names_of(const std::vector<LefschetzProfile>& ps) {
  std::string out;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i) out += ',';
    out += ps[i].name();
  }
  return out;
}

std::vector<int> indices_of(unsigned mask, int n) {
  std::vector<int> out;
  for (int k = 0; k < n; ++k)
    if (mask & (1U << k)) out.push_back(k);
  return out;
}

}  // namespace

SodExpr projective_bundle_sod(const CategoryTerm& cat, const InvariantExpr& inv,
                              int r) {
  require_positive(r, 1, "projective bundle rank");
  SodExpr sod{"P_" + std::to_string(r) + "(" + cat.to_string() + ")",
              std::string(base::kV),
              {}};
  for (int k = 0; k < r; ++k)
    sod.blocks.push_back({CategoryTerm::pullback(cat, "pi"), k, inv});
  return sod;
}

SodExpr blowup_sod(const InvariantExpr& cat_inv,
                   const InvariantExpr& center_inv, int r,
                   const CategoryTerm& cat, const CategoryTerm& center) {
  require_positive(r, 2, "blow-up codimension");
  SodExpr sod{"Bl(" + cat.to_string() + ")", std::string(base::kV), {}};
  sod.blocks.push_back({CategoryTerm::pullback(cat, "beta"), 0, cat_inv});
  for (int k = 0; k <= r - 2; ++k)
    sod.blocks.push_back(
        {CategoryTerm::pullback(center, "exc"), k, center_inv});
  return sod;
}

SodExpr hyperplane_sod(const InvariantExpr& cat_inv,
                       const InvariantExpr& base_locus_inv, int r,
                       const CategoryTerm& cat,
                       const CategoryTerm& base_locus) {
  require_positive(r, 2, "bundle rank");
  SodExpr sod{"Hyp(" + cat.to_string() + ")", std::string(base::kV), {}};
  sod.blocks.push_back(
      {CategoryTerm::pullback(base_locus, "j_rho"), 0, base_locus_inv});
  for (int k = 1; k <= r - 1; ++k)
    sod.blocks.push_back({CategoryTerm::pullback(cat, "pi"), k, cat_inv});
  return sod;
}

InvariantExpr hpd_total_of_components(
    const std::vector<InvariantExpr>& components, int ambient) {
  InvariantExpr total;
  InvariantExpr higher;
  for (std::size_t k = 0; k < components.size(); ++k) {
    total += components[k];
    if (k > 0) higher += components[k];
  }
  return n_of(ambient - 1) * total - n_of(ambient) * higher;
}

InvariantExpr hpd_total(const LefschetzProfile& profile) {
  profile.require_moderate("hpd_total");
  return n_of(profile.ambient() - 1) * profile.total() -
         n_of(profile.ambient()) * profile.higher_components_sum();
}

SodExpr universal_hyperplane_sod(const LefschetzProfile& profile) {
  profile.require_moderate("universal_hyperplane_sod");
  const CategoryTerm a = CategoryTerm::atom(profile.name());
  SodExpr sod{"H(" + profile.name() + ")", std::string(base::kVDual), {}};
  sod.blocks.push_back({CategoryTerm::hpd(a), 0, hpd_total(profile)});
  const CategoryTerm d = CategoryTerm::ambient(std::string(base::kVDual));
  for (int k = 1; k < profile.length(); ++k)
    sod.blocks.push_back(
        {CategoryTerm::product({CategoryTerm::component(a, k), d}), k,
         n_of(profile.ambient()) * profile.component(k)});
  return sod;
}

InvariantExpr two_hyperplane_rank(const InvariantExpr& a1,
                                  const InvariantExpr& a2,
                                  const InvariantExpr& e, int ambient) {
  return e + n_of(ambient - 2) * a1 * a2;
}

NHyperplaneResult n_hyperplane_sod_with(
    const std::vector<LefschetzProfile>& profiles,
    const std::map<std::vector<int>, InvariantExpr>& subset_totals,
    const std::string& source) {
  if (profiles.empty())
    throw HpdError(ErrorKind::InvalidArgument,
                   "n-universal hyperplane needs at least one category");
  if (profiles.size() > 16)
    throw HpdError(ErrorKind::InvalidArgument, "too many categories");
  require_same_ambient(profiles);
  for (const auto& p : profiles) p.require_moderate("n_hyperplane_sod");

  const int n = static_cast<int>(profiles.size());
  const int N = profiles.front().ambient();
  const unsigned full = (1U << n) - 1;

  std::vector<InvariantExpr> higher(n);
  for (int k = 0; k < n; ++k) higher[k] = profiles[k].higher_components_sum();

  auto h_total = [&](unsigned mask) -> InvariantExpr {
    auto idx = indices_of(mask, n);
    if (idx.size() == 1) return n_of(N - 1) * profiles[idx[0]].total();
    auto it = subset_totals.find(idx);
    if (it == subset_totals.end())
      throw HpdError(ErrorKind::Underdetermined,
                     "no total for the n-universal hyperplane of a subset");
    return it->second;
  };

  // C(S) = Htot(S) - Σ_{I ⊊ S} C(I) Π_{k ∈ S\I} Σ_{i>=1} comp_k(i)
  std::vector<InvariantExpr> c(full + 1);
  c[0] = n_of(N);
  for (unsigned s = 1; s <= full; ++s) {
    InvariantExpr value = h_total(s);
    for (unsigned i = (s - 1) & s;; i = (i - 1) & s) {
      InvariantExpr factor = c[i];
      for (int k = 0; k < n; ++k)
        if ((s & ~i) & (1U << k)) factor *= higher[k];
      value -= factor;
      if (i == 0) break;
    }
    c[s] = value;
  }

  NHyperplaneResult out;
  out.h_total = h_total(full);
  out.h_total_source = source;
  out.c_invariant = c[full];
  for (unsigned s = 1; s < full; ++s)
    out.subset_invariants[indices_of(s, n)] = c[s];

  const std::vector<int> all = indices_of(full, n);
  out.sod.name = "H(" + names_of(profiles) + ")";
  out.sod.base = std::string(base::kVDual);
  out.sod.blocks.push_back(
      {CategoryTerm::hpd(atoms_of(profiles, all)), 0, c[full]});

  std::vector<unsigned> subsets;
  for (unsigned s = 0; s < full; ++s) subsets.push_back(s);
  std::stable_sort(subsets.begin(), subsets.end(), [&](unsigned a, unsigned b) {
    const auto pa = __builtin_popcount(a);
    const auto pb = __builtin_popcount(b);
    if (pa != pb) return pa > pb;
    return indices_of(a, n) < indices_of(b, n);
  });

  for (unsigned s : subsets) {
    const CategoryTerm c_term =
        s == 0 ? CategoryTerm::ambient(std::string(base::kVDual))
               : CategoryTerm::hpd(atoms_of(profiles, indices_of(s, n)));
    const std::vector<int> rest = indices_of(full & ~s, n);
    // Every tuple (i_k >= 1) over the factors outside s.
    std::vector<int> tuple(rest.size(), 1);
    bool empty = false;
    for (int k : rest)
      if (profiles[k].length() < 2) empty = true;
    if (empty) continue;
    for (;;) {
      std::vector<CategoryTerm> parts;
      InvariantExpr value = c[s];
      int twist = 0;
      for (std::size_t t = 0; t < rest.size(); ++t) {
        const auto& p = profiles[rest[t]];
        parts.push_back(
            CategoryTerm::component(CategoryTerm::atom(p.name()), tuple[t]));
        value *= p.component(tuple[t]);
        twist += tuple[t];
      }
      parts.push_back(c_term);
      out.sod.blocks.push_back(
          {CategoryTerm::product(std::move(parts)), twist, value});
      int pos = static_cast<int>(rest.size()) - 1;
      while (pos >= 0 && tuple[pos] + 1 >= profiles[rest[pos]].length()) {
        tuple[pos] = 1;
        --pos;
      }
      if (pos < 0) break;
      ++tuple[pos];
    }
  }
  return out;
}

NHyperplaneResult n_hyperplane_sod(
    const std::vector<LefschetzProfile>& profiles, const Workspace& ws,
    const std::optional<InvariantExpr>& explicit_total) {
  if (profiles.empty())
    throw HpdError(ErrorKind::InvalidArgument,
                   "n-universal hyperplane needs at least one category");
  require_same_ambient(profiles);
  const int n = static_cast<int>(profiles.size());
  const int N = profiles.front().ambient();
  const unsigned full = (1U << n) - 1;

  std::map<std::vector<int>, InvariantExpr> totals;
  std::string full_source = n == 1 ? "universal" : "";
  for (unsigned s = 1; s <= full; ++s) {
    const auto idx = indices_of(s, n);
    if (idx.size() < 2) continue;
    std::vector<std::string> names;
    for (int k : idx) names.push_back(profiles[k].name());

    std::vector<std::pair<std::string, InvariantExpr>> candidates;
    if (s == full && explicit_total)
      candidates.emplace_back("explicit", *explicit_total);
    if (ws.are_disjoint(names)) {
      InvariantExpr prod = n_of(N - static_cast<long long>(idx.size()));
      for (int k : idx) prod *= profiles[k].total();
      candidates.emplace_back("disjoint", prod);
    }
    if (idx.size() == 2) {
      if (auto e = ws.intersection(names[0], names[1], N))
        candidates.emplace_back(
            "intersection",
            two_hyperplane_rank(profiles[idx[0]].total(),
                                profiles[idx[1]].total(), *e, N));
    }
    std::string label = "(";
    for (std::size_t i = 0; i < names.size(); ++i)
      label += (i ? "," : "") + names[i];
    label += ")";
    if (candidates.empty())
      throw HpdError(ErrorKind::Underdetermined,
                     "the n-universal hyperplane total of " + label +
                         " is not derivable: declare the categories disjoint, "
                         "declare their intersection (n = 2) or pass htotal=");
    for (const auto& [src, value] : candidates)
      if (value != candidates.front().second)
        throw HpdError(ErrorKind::ConflictingHyperplaneTotal,
                       "n-universal hyperplane total of " + label + ": " +
                           candidates.front().first + " gives " +
                           candidates.front().second.to_string() + " but " +
                           src + " gives " + value.to_string());
    totals[idx] = candidates.front().second;
    if (s == full) full_source = candidates.front().first;
  }
  return n_hyperplane_sod_with(profiles, totals, full_source);
}

std::vector<InvariantExpr> convolve(
    const std::vector<std::vector<InvariantExpr>>& primitive_lists) {
  std::vector<InvariantExpr> acc{InvariantExpr(1)};
  for (const auto& list : primitive_lists) {
    if (list.empty()) return {};
    std::vector<InvariantExpr> next(acc.size() + list.size() - 1);
    for (std::size_t a = 0; a < acc.size(); ++a) {
      if (acc[a].is_zero()) continue;
      for (std::size_t b = 0; b < list.size(); ++b)
        if (!list[b].is_zero()) next[a + b] += acc[a] * list[b];
    }
    acc = std::move(next);
  }
  return acc;
}

std::vector<InvariantExpr> join_bar_components(
    const std::vector<std::vector<InvariantExpr>>& primitive_lists) {
  const int n = static_cast<int>(primitive_lists.size());
  int total_length = 0;
  for (const auto& l : primitive_lists) total_length += static_cast<int>(l.size());
  const auto tail = suffix_sums(convolve(primitive_lists));
  std::vector<InvariantExpr> out(total_length);
  for (int i = 0; i < total_length; ++i) {
    const int from = std::max(0, i + 1 - n);
    if (from < static_cast<int>(tail.size())) out[i] = tail[from];
  }
  return out;
}

std::vector<InvariantExpr> ruled_join_components(const LefschetzProfile& p,
                                                 const LefschetzProfile& q) {
  require_same_ambient({p, q});
  return join_bar_components({p.primitives(), q.primitives()});
}

std::vector<InvariantExpr> JoinResult::component_values() const {
  std::vector<InvariantExpr> out;
  for (const auto& c : components) out.push_back(c.value());
  return out;
}

std::vector<InvariantExpr> JoinResult::jprimes() const {
  std::vector<InvariantExpr> out;
  for (const auto& c : components) out.push_back(c.jprime);
  return out;
}

InvariantExpr join_conservation_total(const std::vector<InvariantExpr>& ruled,
                                      const InvariantExpr& intersection,
                                      int ambient) {
  InvariantExpr sum_all;
  InvariantExpr sum_high;
  for (std::size_t i = 0; i < ruled.size(); ++i) {
    sum_all += ruled[i];
    if (static_cast<int>(i) >= ambient - 1) sum_high += ruled[i];
  }
  return sum_all + n_of(ambient - 1) * intersection - n_of(ambient) * sum_high;
}

JoinResult join_profile_with(const LefschetzProfile& p,
                             const LefschetzProfile& q,
                             const InvariantExpr& intersection,
                             const EngineOptions& options) {
  require_same_ambient({p, q});
  const int N = p.ambient();
  JoinResult out;
  out.intersection = intersection;
  out.ruled = join_bar_components({p.primitives(), q.primitives()});
  const auto c = convolve({p.primitives(), q.primitives()});
  const int m = static_cast<int>(out.ruled.size());

  out.e_invariant = intersection;
  for (int i = N; i < m; ++i) out.e_invariant -= out.ruled[i];

  const int bound = options.mutate_jprime_bound ? N - 2 : N - 3;
  const CategoryTerm join =
      CategoryTerm::join({CategoryTerm::atom(p.name()),
                          CategoryTerm::atom(q.name())});
  out.sod.name = join.to_string();
  out.sod.base = std::string(base::kV);
  for (int i = 0; i <= N - 2; ++i) {
    JoinComponent comp;
    for (int s = std::max(i - 1, 0);
         s <= bound && s < static_cast<int>(c.size()); ++s)
      comp.jprime += c[s];
    comp.e_part = out.e_invariant;
    out.total += comp.value();
    out.sod.blocks.push_back({CategoryTerm::component(join, i), i,
                              comp.value()});
    out.components.push_back(std::move(comp));
  }
  return out;
}

JoinResult join_profile(const LefschetzProfile& p, const LefschetzProfile& q,
                        const Workspace& ws, const EngineOptions& options) {
  require_same_ambient({p, q});
  auto e = ws.intersection(p.name(), q.name(), p.ambient());
  if (!e)
    throw HpdError(ErrorKind::UnresolvedIntersection,
                   "no intersection declared for '" + p.name() + "' and '" +
                       q.name() + "' over P(" + std::to_string(p.ambient()) +
                       ") and they are not declared disjoint");
  return join_profile_with(p, q, *e, options);
}

LefschetzProfile join_as_profile(const JoinResult& join, std::string name,
                                 int ambient) {
  return LefschetzProfile::from_components(std::move(name), ambient,
                                           join.component_values());
}

std::vector<InvariantExpr> n_join_profile(
    const std::vector<LefschetzProfile>& profiles, const Workspace& ws) {
  if (profiles.empty())
    throw HpdError(ErrorKind::InvalidArgument,
                   "a join needs at least one category");
  require_same_ambient(profiles);
  if (profiles.size() >= 2) {
    std::vector<std::string> names;
    for (const auto& p : profiles) names.push_back(p.name());
    if (!ws.are_disjoint(names))
      throw HpdError(ErrorKind::MissingDisjointness,
                     "the n-fold join of (" + names_of(profiles) +
                         ") needs a `disjoint` declaration covering all of "
                         "them");
  }
  std::vector<std::vector<InvariantExpr>> lists;
  for (const auto& p : profiles) lists.push_back(p.primitives());
  return join_bar_components(lists);
}

InvariantExpr n_join_total(const std::vector<InvariantExpr>& totals,
                           const std::vector<InvariantExpr>& centers) {
  InvariantExpr out;
  for (std::size_t k = 0; k < totals.size(); ++k) {
    InvariantExpr term = totals[k];
    for (std::size_t j = 0; j < centers.size(); ++j)
      if (j != k) term *= centers[j];
    out += term;
  }
  return out;
}

RefinedBlowup refined_blowup_profile(
    const LefschetzProfile& p, int ell,
    const std::optional<InvariantExpr>& base_locus) {
  if (ell < 2 || ell > p.ambient())
    throw HpdError(ErrorKind::InvalidArgument,
                   "refined blow-up needs 2 <= ell <= N = " +
                       std::to_string(p.ambient()) + ", got " +
                       std::to_string(ell));
  if (!base_locus)
    throw HpdError(ErrorKind::UnresolvedBaseLocus,
                   "no base locus invariant for the refined blow-up of '" +
                       p.name() + "'");
  RefinedBlowup out;
  out.ambient = ell;
  const auto& prim = p.primitives();
  for (int k = 0; k <= ell - 2; ++k) {
    InvariantExpr a;
    for (int j = k; j <= ell - 2 && j < p.length(); ++j) a += prim[j];
    out.a_prime.push_back(std::move(a));
  }
  out.c_l = *base_locus;
  for (int k = ell; k < p.length(); ++k) out.c_l -= p.component(k);

  const CategoryTerm refined =
      CategoryTerm::pullback(CategoryTerm::atom(p.name()), "beta");
  out.sod.name = "Bl_L(" + p.name() + ")";
  out.sod.base = std::string(base::kLDual);
  for (int k = 0; k <= ell - 2; ++k) {
    const InvariantExpr value = out.a_prime[k] + out.c_l;
    out.total += value;
    out.sod.blocks.push_back({CategoryTerm::component(refined, k), k, value});
  }
  return out;
}

InvariantExpr refined_blowup_conservation_total(const LefschetzProfile& p,
                                                int ell,
                                                const InvariantExpr& z) {
  InvariantExpr removed;
  for (int k = ell - 1; k < p.length(); ++k) removed += p.component(k);
  return blowup_sod(p.total(), z, ell).total() - n_of(ell) * removed;
}

SodExpr twist_sod(const SodExpr& x, int t) {
  SodExpr out = x;
  for (auto& b : out.blocks) b.twist += t;
  return out;
}

}  // namespace hpd
