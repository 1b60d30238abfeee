#include "hpd/catalog.hpp"

#include <map>
#include <sstream>

#include "hpd/dsl.hpp"
#include "hpd/lexer.hpp"

namespace hpd {

const std::vector<CatalogCase>& catalog_cases() {
  static const std::vector<CatalogCase> cases = [] {
    std::map<std::string, CatalogCase> by_name;
    for (const auto& f : detail::embedded_catalog_files()) {
      const std::string name(f.name);
      const auto dot = name.rfind('.');
      const std::string stem = name.substr(0, dot);
      const std::string ext = name.substr(dot + 1);
      auto& c = by_name[stem];
      c.name = stem;
      if (ext == "hpd") c.source = std::string(f.content);
      if (ext == "golden") c.golden = std::string(f.content);
    }
    std::vector<CatalogCase> out;
    for (auto& [_, c] : by_name)
      if (!c.source.empty()) out.push_back(std::move(c));
    return out;
  }();
  return cases;
}

const CatalogCase* find_catalog_case(std::string_view name) {
  for (const auto& c : catalog_cases())
    if (c.name == name) return &c;
  return nullptr;
}

std::string Probe::value_text() const {
  return is_list ? to_string(values) : values.front().to_string();
}

namespace {

Probe scalar(std::string key, InvariantExpr v, std::string provenance) {
  return Probe{std::move(key), {std::move(v)}, false, std::move(provenance)};
}

Probe list(std::string key, std::vector<InvariantExpr> v,
           std::string provenance) {
  return Probe{std::move(key), std::move(v), true, std::move(provenance)};
}

void join_probes(std::vector<Probe>& out, const Workspace& ws,
                 const std::string& a, const std::string& b,
                 const EngineOptions& options) {
  const auto& p = ws.category(a);
  const auto& q = ws.category(b);
  const JoinResult j = join_profile(p, q, ws, options);
  out.push_back(list("ruled.components", j.ruled,
                     "ruled join components: suffix sums of the primitive "
                     "convolution, from index i-1"));
  out.push_back(list("join.jprime", j.jprimes(),
                     "J'_i: convolution terms with i-1 <= i1+i2 <= N-3"));
  out.push_back(scalar("join.E", j.e_invariant,
                       "E = e - sum of ruled components with index >= N"));
  out.push_back(list("join.components", j.component_values(),
                     "join component i = J'_i + E, i = 0..N-2"));
  out.push_back(scalar("join.total", j.total, "sum of the join components"));
}

void refined_probes(std::vector<Probe>& out, const Workspace& ws,
                    const std::string& a, const std::string& linear) {
  const auto& p = ws.category(a);
  const auto& l = ws.category(linear);
  const int N = p.ambient();
  const int ell = N - l.length();
  const auto z = ws.intersection(a, linear, N);
  const RefinedBlowup r = refined_blowup_profile(p, ell, z);
  out.push_back(list("refined.a_prime", r.a_prime,
                     "A'_k = sum of p_j for k <= j <= ell-2, ell = rank L"));
  out.push_back(scalar("refined.c_l", r.c_l,
                       "C_L = z - sum of comp_k for k >= ell"));
  // <A'_0, C_L> repeated N-ell+1 times, then <A'_k, C_L> for k = 1..ell-2.
  std::vector<InvariantExpr> arranged;
  for (int k = 0; k <= N - ell; ++k) arranged.push_back(r.a_prime[0] + r.c_l);
  for (int k = 1; k <= ell - 2; ++k) arranged.push_back(r.a_prime[k] + r.c_l);
  out.push_back(list("example.components", arranged,
                     "components read off the linear-section example; must "
                     "equal join.components"));
}

}  // namespace

std::vector<Probe> catalog_probes(const CatalogCase& c, const Workspace& ws,
                                  const EngineOptions& options) {
  std::vector<Probe> out;
  if (c.name == "gr25-join") {
    const auto& p = ws.category("Gr25");
    const auto& q = ws.category("Gr25g");
    const auto e = *ws.intersection("Gr25", "Gr25g", 10);
    join_probes(out, ws, "Gr25", "Gr25g", options);
    out.push_back(scalar(
        "ruled_join.blowup_total",
        blowup_sod(p.total() * q.component(0) + p.component(0) * q.total(), e,
                   10)
            .total(),
        "blow-up of the ruled join (total 40) along e in codimension N"));
    out.push_back(scalar(
        "abstract_join.hyperplane_total",
        hyperplane_sod(InvariantExpr(2) * p.total() * q.total(), e, 10).total(),
        "hyperplane of the P^1-bundle (2*10*10) with base locus e, rank N"));
    out.push_back(scalar("hpd_total.Gr25", hpd_total(p), "9*10 - 10*8"));
    out.push_back(scalar("two_hyperplane",
                         two_hyperplane_rank(p.total(), q.total(), e, 10),
                         "e + (N-2)*10*10"));
    out.push_back(scalar("n_hpd.C",
                         n_hyperplane_sod({p, q}, ws).c_invariant,
                         "(e + 800) - 80 - 80 - 640"));
  } else if (c.name == "points-line") {
    const auto& p = ws.category("p1");
    const auto& q = ws.category("p2");
    join_probes(out, ws, "p1", "p2", options);
    out.push_back(scalar("two_hyperplane",
                         two_hyperplane_rank(p.total(), q.total(), 0, 3),
                         "hyperplanes of P^2 through two points"));
    out.push_back(scalar("n_hpd.C", n_hyperplane_sod({p, q}, ws).c_invariant,
                         "no higher components; C = (N-2)*1*1"));
    out.push_back(scalar("hpd_total.p1", hpd_total(p), "N-1"));
  } else if (c.name == "three-points-plane") {
    std::vector<LefschetzProfile> ps{ws.category("p1"), ws.category("p2"),
                                     ws.category("p3")};
    const auto bars = n_join_profile(ps, ws);
    out.push_back(list("n_join.components", bars,
                       "indices with i1+i2+i3 >= i-2; only (0,0,0)"));
    out.push_back(scalar("join.hpd_total", hpd_total_of_components(bars, 4),
                         "3*3 - 4*2"));
    out.push_back(scalar("n_hpd.C", n_hyperplane_sod(ps, ws).c_invariant,
                         "(N-3)*1*1*1"));
    out.push_back(scalar("hpd_total.p1", hpd_total(ps[0]), "N-1"));
  } else if (c.name == "cone-numeric") {
    const auto lhs_of = [](const CheckOutcome& o, std::size_t i = 0) {
      return *o.results.at(i).lhs;
    };
    const auto& g = ws.category("Gr25");
    const auto& pt = ws.category("pt");
    const auto& q = ws.category("q");
    out.push_back(scalar("cone1.Gr25.n2_3", lhs_of(check_cone_part1(g, 3, ws)),
                         "12*10 - 13*8"));
    out.push_back(scalar("cone1.pt.n2_2", lhs_of(check_cone_part1(pt, 2, ws)),
                         "(4-1)*1"));
    out.push_back(scalar("cone2.pt.n2_1", lhs_of(check_cone_part2(pt, 1, ws)),
                         "join is a line in N = 3: 2*2 - 3*1"));
    out.push_back(scalar("cone2.Gr25.n2_2",
                         lhs_of(check_cone_part2(g, 2, ws)),
                         "HPD total of Gr25 over P(10)"));
    out.push_back(scalar("join_linear.pt_q",
                         lhs_of(check_join_linear({pt, q}, ws)),
                         "join of two points is a line in N = 4: 3*2 - 4*1"));
    out.push_back(scalar("join_linear.Gr25_pt",
                         lhs_of(check_join_linear({g, pt}, ws)),
                         "10*1 + 1*2 over N = 12"));
  } else if (c.name == "a-star-pl-empty" || c.name == "a-star-pl-nonempty") {
    join_probes(out, ws, "A", "PLperp", options);
    refined_probes(out, ws, "A", "PLperp");
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> parse_golden(
    std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw HpdError(ErrorKind::Syntax, "golden line without '='",
                     SourceSpan{number, static_cast<int>(first) + 1});
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

std::string render_golden(const CatalogCase& c,
                          const std::vector<Probe>& probes) {
  std::ostringstream out;
  out << "# Golden values for catalog case " << c.name
      << ". Regenerate with hpdcalc catalog --write-goldens.\n";
  for (const auto& p : probes) {
    out << "\n# " << p.provenance << "\n";
    out << p.key << " = " << p.value_text() << "\n";
  }
  return out.str();
}

namespace {

std::vector<InvariantExpr> parse_golden_value(const std::string& text,
                                              bool& is_list) {
  TokenCursor cur(tokenize(text));
  std::vector<InvariantExpr> out;
  is_list = cur.accept_punct('[');
  if (is_list) {
    if (!cur.accept_punct(']')) {
      do {
        out.push_back(parse_polynomial(cur));
      } while (cur.accept_punct(','));
      cur.expect_punct(']');
    }
  } else {
    out.push_back(parse_polynomial(cur));
  }
  if (!cur.at_end()) cur.fail("trailing text in golden value");
  return out;
}

}  // namespace

Report run_catalog_case(const CatalogCase& c, const EngineOptions& options) {
  const Workspace ws = load_workspace(c.source);
  Report report = run_workspace(ws, c.source + c.golden, options);
  const std::string prefix = "golden:" + c.name + ":";

  std::map<std::string, std::string> golden;
  for (auto& [k, v] : parse_golden(c.golden)) golden[k] = v;

  for (const auto& probe : catalog_probes(c, ws, options)) {
    auto it = golden.find(probe.key);
    if (it == golden.end()) {
      report.checks.push_back(CheckResult::underdetermined(
          prefix + probe.key, "no golden value recorded"));
      continue;
    }
    bool is_list = false;
    const auto expected = parse_golden_value(it->second, is_list);
    if (!probe.is_list) {
      report.checks.push_back(CheckResult::compare(
          prefix + probe.key, probe.values.front(),
          expected.empty() ? InvariantExpr() : expected.front(),
          {probe.provenance}));
      continue;
    }
    report.checks.push_back(CheckResult::compare(
        prefix + probe.key + ".length",
        static_cast<long long>(probe.values.size()),
        static_cast<long long>(expected.size()), {"list length"}));
    for (std::size_t i = 0; i < probe.values.size() && i < expected.size();
         ++i)
      report.checks.push_back(CheckResult::compare(
          prefix + probe.key + "[" + std::to_string(i) + "]", probe.values[i],
          expected[i], {probe.provenance}));
  }
  return report;
}

Report run_catalog(const std::optional<std::string>& name,
                   const EngineOptions& options) {
  std::vector<const CatalogCase*> selected;
  if (name) {
    const CatalogCase* c = find_catalog_case(*name);
    if (!c)
      throw HpdError(ErrorKind::InvalidArgument,
                     "unknown catalog case '" + *name + "'");
    selected.push_back(c);
  } else {
    for (const auto& c : catalog_cases()) selected.push_back(&c);
  }
  Report all;
  std::string digest_input;
  for (const CatalogCase* c : selected) {
    Report r = run_catalog_case(*c, options);
    digest_input += r.input_digest;
    for (auto& x : r.checks) all.checks.push_back(std::move(x));
    for (auto& s : r.sods) all.sods.push_back(std::move(s));
    for (auto& w : r.warnings) all.warn(std::move(w));
  }
  all.input_digest = sha256_hex(digest_input);
  return all;
}

}  // namespace hpd
