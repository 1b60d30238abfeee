#include "hpd/lefschetz.hpp"

#include <algorithm>
#include <sstream>

namespace hpd {

InvariantExpr weighted_total(const std::vector<InvariantExpr>& primitives) {
  InvariantExpr total;
  for (std::size_t j = 0; j < primitives.size(); ++j)
    total += InvariantExpr(static_cast<long long>(j + 1)) * primitives[j];
  return total;
}

std::vector<InvariantExpr> suffix_sums(
    const std::vector<InvariantExpr>& primitives) {
  std::vector<InvariantExpr> out(primitives.size());
  InvariantExpr running;
  for (std::size_t k = primitives.size(); k-- > 0;) {
    running += primitives[k];
    out[k] = running;
  }
  return out;
}

LefschetzProfile LefschetzProfile::build(
    std::string name, int ambient, std::vector<InvariantExpr> right,
    std::optional<std::vector<InvariantExpr>> left, bool allow_nonmoderate) {
  if (ambient < 2)
    throw HpdError(ErrorKind::InvalidArgument,
                   "category '" + name + "': ambient rank must be at least 2");
  if (right.empty())
    throw HpdError(ErrorKind::InvalidArgument,
                   "category '" + name + "': primitive list is empty");
  const int m = static_cast<int>(right.size());
  if (m >= ambient && !allow_nonmoderate)
    throw HpdError(ErrorKind::NonModerate,
                   "category '" + name + "' has length " + std::to_string(m) +
                       " but ambient rank " + std::to_string(ambient) +
                       "; moderate profiles need length < N");
  LefschetzProfile p;
  p.name_ = std::move(name);
  p.ambient_ = ambient;
  if (left) {
    if (left->size() != right.size())
      throw HpdError(ErrorKind::LeftRightMismatch,
                     "category '" + p.name_ +
                         "': left and right primitive lists differ in length");
    if (weighted_total(*left) != weighted_total(right))
      throw HpdError(ErrorKind::LeftRightMismatch,
                     "category '" + p.name_ + "': left total " +
                         weighted_total(*left).to_string() +
                         " differs from right total " +
                         weighted_total(right).to_string());
    p.left_ = std::move(*left);
    p.explicit_left_ = true;
  } else {
    p.left_ = right;
  }
  p.right_ = std::move(right);
  return p;
}

LefschetzProfile LefschetzProfile::from_components(
    std::string name, int ambient, const std::vector<InvariantExpr>& components,
    bool allow_nonmoderate) {
  std::vector<InvariantExpr> primitives(components.size());
  for (std::size_t k = 0; k < components.size(); ++k) {
    primitives[k] = components[k];
    if (k + 1 < components.size()) primitives[k] -= components[k + 1];
  }
  return build(std::move(name), ambient, std::move(primitives), std::nullopt,
               allow_nonmoderate);
}

InvariantExpr LefschetzProfile::component(int k) const {
  InvariantExpr out;
  for (int j = std::max(k, 0); j < length(); ++j) out += right_[j];
  return out;
}

std::vector<InvariantExpr> LefschetzProfile::components() const {
  return suffix_sums(right_);
}

InvariantExpr LefschetzProfile::total() const {
  return weighted_total(right_);
}

InvariantExpr LefschetzProfile::higher_components_sum() const {
  // Σ_{k>=1} Σ_{j>=k} p_j = Σ_j j p_j
  InvariantExpr out;
  for (int j = 1; j < length(); ++j)
    out += InvariantExpr(static_cast<long long>(j)) * right_[j];
  return out;
}

void LefschetzProfile::require_moderate(std::string_view operation) const {
  if (!moderate())
    throw HpdError(ErrorKind::NonModerate,
                   std::string(operation) + " needs a moderate profile, but '" +
                       name_ + "' has length " + std::to_string(length()) +
                       " >= N = " + std::to_string(ambient_));
}

LefschetzProfile LefschetzProfile::renamed(std::string name) const {
  LefschetzProfile out = *this;
  out.name_ = std::move(name);
  return out;
}

LefschetzProfile LefschetzProfile::with_ambient(int ambient) const {
  LefschetzProfile out = *this;
  out.ambient_ = ambient;
  return out;
}

// ---------------------------------------------------------------------------
// CategoryTerm

CategoryTerm CategoryTerm::atom(std::string name) {
  CategoryTerm t;
  t.kind_ = Kind::Atom;
  t.label_ = std::move(name);
  return t;
}

CategoryTerm CategoryTerm::hpd(std::vector<CategoryTerm> of,
                               std::string base) {
  CategoryTerm t;
  t.kind_ = Kind::Hpd;
  t.label_ = std::move(base);
  t.children_ = std::move(of);
  return t;
}

CategoryTerm CategoryTerm::hpd(CategoryTerm of, std::string base) {
  return hpd(std::vector<CategoryTerm>{std::move(of)}, std::move(base));
}

CategoryTerm CategoryTerm::join(std::vector<CategoryTerm> parts) {
  CategoryTerm t;
  t.kind_ = Kind::Join;
  t.children_ = std::move(parts);
  return t;
}

CategoryTerm CategoryTerm::fiber_product(std::vector<CategoryTerm> parts,
                                         std::string base) {
  CategoryTerm t;
  t.kind_ = Kind::FiberProduct;
  t.label_ = std::move(base);
  t.children_ = std::move(parts);
  return t;
}

CategoryTerm CategoryTerm::pullback(CategoryTerm of, std::string morphism) {
  CategoryTerm t;
  t.kind_ = Kind::PullbackImage;
  t.label_ = std::move(morphism);
  t.children_.push_back(std::move(of));
  return t;
}

CategoryTerm CategoryTerm::exceptional(CategoryTerm of) {
  CategoryTerm t;
  t.kind_ = Kind::ExceptionalPart;
  t.children_.push_back(std::move(of));
  return t;
}

CategoryTerm CategoryTerm::twist(CategoryTerm of, int degree) {
  CategoryTerm t;
  t.kind_ = Kind::Twist;
  t.index_ = degree;
  t.children_.push_back(std::move(of));
  return t;
}

CategoryTerm CategoryTerm::component(CategoryTerm of, int index) {
  CategoryTerm t;
  t.kind_ = Kind::Component;
  t.index_ = index;
  t.children_.push_back(std::move(of));
  return t;
}

CategoryTerm CategoryTerm::product(std::vector<CategoryTerm> parts) {
  CategoryTerm t;
  t.kind_ = Kind::Product;
  t.children_ = std::move(parts);
  return t;
}

CategoryTerm CategoryTerm::ambient(std::string base) {
  CategoryTerm t;
  t.kind_ = Kind::Ambient;
  t.label_ = std::move(base);
  return t;
}

namespace {

std::string join_children(const std::vector<CategoryTerm>& children) {
  std::string out;
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (i) out += ',';
    out += children[i].to_string();
  }
  return out;
}

}  // namespace

std::string CategoryTerm::to_string() const {
  switch (kind_) {
    case Kind::Atom: return label_;
    case Kind::Hpd:
      if (label_ == base::kVDual) return "hpd(" + join_children(children_) + ")";
      return "hpd[" + label_ + "](" + join_children(children_) + ")";
    case Kind::Join: return "join(" + join_children(children_) + ")";
    case Kind::FiberProduct:
      return "fib[" + label_ + "](" + join_children(children_) + ")";
    case Kind::PullbackImage:
      return "pull[" + label_ + "](" + join_children(children_) + ")";
    case Kind::ExceptionalPart:
      return "exc(" + join_children(children_) + ")";
    case Kind::Twist:
      return "twist(" + join_children(children_) + "," +
             std::to_string(index_) + ")";
    case Kind::Component:
      return "comp(" + join_children(children_) + "," +
             std::to_string(index_) + ")";
    case Kind::Product: return "prod(" + join_children(children_) + ")";
    case Kind::Ambient: return "D[" + label_ + "]";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// SodExpr

InvariantExpr SodExpr::total() const {
  InvariantExpr out;
  for (const auto& b : blocks) out += b.invariant;
  return out;
}

bool sod_equal(const SodExpr& x, const SodExpr& y) {
  if (x.base != y.base || x.blocks.size() != y.blocks.size()) return false;
  for (std::size_t i = 0; i < x.blocks.size(); ++i) {
    const auto& a = x.blocks[i];
    const auto& b = y.blocks[i];
    if (!(a.term == b.term) || a.twist != b.twist ||
        !eq(a.invariant, b.invariant))
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Workspace

const InvariantExpr* CheckCall::option(std::string_view key) const {
  for (const auto& [k, v] : options)
    if (k == key) return &v;
  return nullptr;
}

std::string CheckCall::signature() const {
  std::string out = name + "(";
  bool first = true;
  for (const auto& a : args) {
    if (!first) out += ',';
    out += a;
    first = false;
  }
  for (const auto& [k, v] : options) {
    if (!first) out += ',';
    out += k + "=" + v.to_string();
    first = false;
  }
  return out + ")";
}

IntersectionKey IntersectionKey::make(std::string a, std::string b,
                                      int ambient) {
  if (b < a) std::swap(a, b);
  return IntersectionKey{std::move(a), std::move(b), ambient};
}

const LefschetzProfile& Workspace::category(const std::string& name) const {
  auto it = categories.find(name);
  if (it == categories.end())
    throw HpdError(ErrorKind::UnknownCategory,
                   "unknown category '" + name + "'");
  return it->second;
}

const LefschetzProfile* Workspace::dual(const std::string& name) const {
  auto it = duals.find(name);
  return it == duals.end() ? nullptr : &it->second;
}

bool Workspace::are_disjoint(const std::vector<std::string>& names) const {
  std::vector<std::string> wanted = names;
  std::sort(wanted.begin(), wanted.end());
  wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());
  // A category is never disjoint from itself.
  if (wanted.size() != names.size()) return false;
  for (const auto& set : disjoint_sets)
    if (std::includes(set.begin(), set.end(), wanted.begin(), wanted.end()))
      return true;
  return false;
}

std::optional<InvariantExpr> Workspace::intersection(const std::string& a,
                                                     const std::string& b,
                                                     int ambient) const {
  if (are_disjoint({a, b})) return InvariantExpr{};
  auto it = intersections.find(IntersectionKey::make(a, b, ambient));
  if (it == intersections.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

Json expr_list(const std::vector<InvariantExpr>& values) {
  Json arr = Json::array();
  for (const auto& v : values) arr.push_back(v.to_string());
  return arr;
}

}  // namespace

std::string to_string(const std::vector<InvariantExpr>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += values[i].to_string();
  }
  return out + "]";
}

Json to_json(const LefschetzProfile& profile) {
  Json j;
  j["name"] = profile.name();
  j["ambient"] = profile.ambient();
  j["length"] = profile.length();
  j["primitive"] = expr_list(profile.primitives());
  if (profile.has_explicit_left())
    j["left"] = expr_list(profile.left_primitives());
  j["components"] = expr_list(profile.components());
  j["total"] = profile.total().to_string();
  return j;
}

Json to_json(const SodExpr& sod) {
  Json j;
  j["name"] = sod.name;
  j["base"] = sod.base;
  Json blocks = Json::array();
  for (const auto& b : sod.blocks) {
    Json jb;
    jb["term"] = b.term.to_string();
    jb["twist"] = b.twist;
    jb["invariant"] = b.invariant.to_string();
    blocks.push_back(std::move(jb));
  }
  j["blocks"] = std::move(blocks);
  return j;
}

Json to_json(const Workspace& ws) {
  Json j;
  j["symbols"] = Json(std::vector<std::string>(ws.symbols.begin(),
                                               ws.symbols.end()));
  Json cats = Json::array();
  for (const auto& [_, p] : ws.categories) cats.push_back(to_json(p));
  j["categories"] = std::move(cats);
  Json inter = Json::array();
  for (const auto& [k, v] : ws.intersections) {
    Json ji;
    ji["first"] = k.first;
    ji["second"] = k.second;
    ji["ambient"] = k.ambient;
    ji["value"] = v.to_string();
    inter.push_back(std::move(ji));
  }
  j["intersections"] = std::move(inter);
  j["disjoint"] = Json(ws.disjoint_sets);
  Json duals = Json::array();
  for (const auto& [_, p] : ws.duals) duals.push_back(to_json(p));
  j["duals"] = std::move(duals);
  Json checks = Json::array();
  for (const auto& c : ws.checks) checks.push_back(c.signature());
  j["checks"] = std::move(checks);
  return j;
}

}  // namespace hpd
