#include "kzq/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "kzq/error.hpp"

namespace kzq {

Perm::Perm(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point p : images_) {
    if (p >= images_.size() || seen[p])
      throw Error(ErrorCode::InvalidArgument, "image array is not a bijection");
    seen[p] = true;
  }
}

Perm Perm::identity(std::size_t degree) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  Perm p;
  p.images_ = std::move(img);
  return p;
}

Perm Perm::from_cycles(std::string_view text, std::size_t degree) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  const std::string input(text);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < input.size() && std::isspace(static_cast<unsigned char>(input[i])))
      ++i;
  };
  std::vector<bool> moved(degree, false);
  skip_ws();
  if (i == input.size()) throw ParseError(i, "'('", input);
  while (i < input.size()) {
    skip_ws();
    if (i == input.size()) break;
    if (input[i] != '(') throw ParseError(i, "'('", input);
    ++i;
    std::vector<Point> cycle;
    for (;;) {
      skip_ws();
      if (i < input.size() && input[i] == ')') {
        ++i;
        break;
      }
      if (!cycle.empty()) {
        if (i >= input.size() || input[i] != ',') throw ParseError(i, "',' or ')'", input);
        ++i;
        skip_ws();
      }
      std::size_t start = i;
      while (i < input.size() && std::isdigit(static_cast<unsigned char>(input[i]))) ++i;
      if (start == i) throw ParseError(i, "point number", input);
      unsigned long v = std::stoul(input.substr(start, i - start));
      if (v == 0 || v > degree) throw ParseError(start, "point in 1.." + std::to_string(degree), input);
      Point p = static_cast<Point>(v - 1);
      if (moved[p]) throw ParseError(start, "point not already used", input);
      moved[p] = true;
      cycle.push_back(p);
    }
    for (std::size_t k = 0; k < cycle.size(); ++k)
      img[cycle[k]] = cycle[(k + 1) % cycle.size()];
  }
  return Perm(std::move(img));
}

Perm Perm::then(const Perm& next) const {
  if (next.degree() != degree())
    throw Error(ErrorCode::DegreeMismatch, "composing permutations of different degree");
  Perm r;
  r.images_.resize(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) r.images_[x] = next.images_[images_[x]];
  return r;
}

Perm Perm::inverse() const {
  Perm r;
  r.images_.resize(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) r.images_[images_[x]] = static_cast<Point>(x);
  return r;
}

bool Perm::is_identity() const noexcept {
  for (std::size_t x = 0; x < images_.size(); ++x)
    if (images_[x] != x) return false;
  return true;
}

std::string Perm::to_cycles() const {
  std::ostringstream out;
  std::vector<bool> done(images_.size(), false);
  bool any = false;
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (done[x] || images_[x] == x) continue;
    any = true;
    out << '(';
    std::size_t y = x;
    bool first = true;
    do {
      if (!first) out << ',';
      first = false;
      out << (y + 1);
      done[y] = true;
      y = images_[y];
    } while (y != x);
    out << ')';
  }
  if (!any) return "()";
  return out.str();
}

std::size_t PermHash::operator()(const Perm& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Point x : p.images()) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return h;
}

// ---------------------------------------------------------------------------

struct FiniteGroup::Impl {
  std::string label;
  std::size_t degree = 0;
  std::vector<Perm> gens;
  std::vector<std::string> names;
  std::vector<Elem> gen_elems;
  std::vector<Perm> elements;
  std::unordered_map<Perm, Elem, PermHash> index;
  std::vector<Elem> parent;
  std::vector<std::size_t> parent_gen;
  std::vector<Elem> inverse;
  std::vector<Elem> table;  // order*order products, only for small groups
  ClassData classes;

  Elem lookup(const Perm& p) const {
    auto it = index.find(p);
    if (it == index.end())
      throw Error(ErrorCode::Internal, "product left the enumerated group");
    return it->second;
  }
  Elem product(Elem a, Elem b) const {
    if (!table.empty()) return table[static_cast<std::size_t>(a) * elements.size() + b];
    return lookup(elements[a].then(elements[b]));
  }
};

namespace {

constexpr std::size_t kTableLimit = 1024;

std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    if (i < 26)
      names.emplace_back(1, static_cast<char>('a' + i));
    else
      names.push_back("g" + std::to_string(i + 1));
  }
  return names;
}

}  // namespace

struct ClassDataBuilder {
  static void build(FiniteGroup::Impl& g, ClassData& cd);
};

FiniteGroup FiniteGroup::from_generators(std::vector<Perm> gens,
                                         std::vector<std::string> names,
                                         std::size_t degree,
                                         std::size_t order_bound) {
  auto impl = std::make_shared<Impl>();
  if (!gens.empty()) degree = gens.front().degree();
  for (const Perm& p : gens)
    if (p.degree() != degree)
      throw Error(ErrorCode::DegreeMismatch, "generators act on different numbers of points");
  if (names.empty()) names = default_names(gens.size());
  if (names.size() != gens.size())
    throw Error(ErrorCode::InvalidArgument, "generator name count does not match generators");
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (names[i] == names[j])
        throw Error(ErrorCode::InvalidArgument, "duplicate generator name '" + names[i] + "'");

  impl->degree = degree;
  impl->gens = gens;
  impl->names = std::move(names);

  // Breadth-first closure; each layer sorted by image array.
  impl->elements.push_back(Perm::identity(degree));
  impl->index.emplace(impl->elements.back(), 0);
  impl->parent.push_back(0);
  impl->parent_gen.push_back(0);
  std::size_t layer_begin = 0;
  std::size_t layer_end = 1;
  while (layer_begin < layer_end) {
    struct Found {
      Perm p;
      Elem parent;
      std::size_t gen;
    };
    std::vector<Found> next;
    std::unordered_map<Perm, std::size_t, PermHash> in_next;
    for (std::size_t x = layer_begin; x < layer_end; ++x) {
      for (std::size_t k = 0; k < gens.size(); ++k) {
        Perm y = impl->elements[x].then(gens[k]);
        if (impl->index.count(y) || in_next.count(y)) continue;
        in_next.emplace(y, next.size());
        next.push_back({std::move(y), static_cast<Elem>(x), k});
      }
    }
    std::sort(next.begin(), next.end(), [](const Found& a, const Found& b) { return a.p < b.p; });
    if (impl->elements.size() + next.size() > order_bound)
      throw Error(ErrorCode::OrderBoundExceeded,
                  "group order exceeds bound " + std::to_string(order_bound));
    for (Found& f : next) {
      impl->index.emplace(f.p, static_cast<Elem>(impl->elements.size()));
      impl->elements.push_back(std::move(f.p));
      impl->parent.push_back(f.parent);
      impl->parent_gen.push_back(f.gen);
    }
    layer_begin = layer_end;
    layer_end = impl->elements.size();
  }

  const std::size_t n = impl->elements.size();
  for (const Perm& p : gens) impl->gen_elems.push_back(impl->lookup(p));
  if (n <= kTableLimit) {
    impl->table.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        impl->table[a * n + b] = impl->lookup(impl->elements[a].then(impl->elements[b]));
  }
  impl->inverse.resize(n);
  for (std::size_t a = 0; a < n; ++a) impl->inverse[a] = impl->lookup(impl->elements[a].inverse());

  ClassDataBuilder::build(*impl, impl->classes);
  FiniteGroup g;
  g.impl_ = std::move(impl);
  return g;
}

std::size_t FiniteGroup::order() const noexcept { return impl_->elements.size(); }
std::size_t FiniteGroup::degree() const noexcept { return impl_->degree; }
const std::string& FiniteGroup::label() const noexcept { return impl_->label; }

FiniteGroup FiniteGroup::with_label(std::string label) const {
  auto copy = std::make_shared<Impl>(*impl_);
  copy->label = std::move(label);
  FiniteGroup g;
  g.impl_ = std::move(copy);
  return g;
}

const std::vector<Perm>& FiniteGroup::generators() const noexcept { return impl_->gens; }
const std::vector<std::string>& FiniteGroup::generator_names() const noexcept {
  return impl_->names;
}

std::optional<std::size_t> FiniteGroup::generator_index(std::string_view name) const {
  for (std::size_t i = 0; i < impl_->names.size(); ++i)
    if (impl_->names[i] == name) return i;
  return std::nullopt;
}

Elem FiniteGroup::generator(std::size_t i) const { return impl_->gen_elems.at(i); }
const Perm& FiniteGroup::element(Elem g) const { return impl_->elements.at(g); }

std::optional<Elem> FiniteGroup::find(const Perm& p) const {
  auto it = impl_->index.find(p);
  if (it == impl_->index.end()) return std::nullopt;
  return it->second;
}

Elem FiniteGroup::mul(Elem a, Elem b) const { return impl_->product(a, b); }
Elem FiniteGroup::inv(Elem a) const { return impl_->inverse[a]; }

Elem FiniteGroup::pow(Elem a, long long k) const {
  if (k < 0) {
    a = inv(a);
    k = -k;
  }
  Elem result = identity();
  Elem base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

unsigned FiniteGroup::element_order(Elem a) const {
  unsigned n = 1;
  for (Elem x = a; x != identity(); x = mul(x, a)) ++n;
  return n;
}

bool FiniteGroup::is_abelian() const {
  for (Elem a : impl_->gen_elems)
    for (Elem b : impl_->gen_elems)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::vector<std::size_t> FiniteGroup::word_of(Elem g) const {
  std::vector<std::size_t> word;
  while (g != identity()) {
    word.push_back(impl_->parent_gen[g]);
    g = impl_->parent[g];
  }
  std::reverse(word.begin(), word.end());
  return word;
}

std::pair<Elem, std::size_t> FiniteGroup::parent_of(Elem g) const {
  return {impl_->parent[g], impl_->parent_gen[g]};
}

const ClassData& FiniteGroup::classes() const noexcept { return impl_->classes; }

const ClassData& conjugacy_classes(const FiniteGroup& g) { return g.classes(); }

// ---------------------------------------------------------------------------

void ClassDataBuilder::build(FiniteGroup::Impl& g, ClassData& cd) {
  const std::size_t n = g.elements.size();
  std::vector<bool> seen(n, false);
  std::vector<ConjugacyClass> classes;
  for (Elem x = 0; x < n; ++x) {
    if (seen[x]) continue;
    ConjugacyClass c;
    c.representative = x;
    std::vector<Elem> queue{x};
    seen[x] = true;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      Elem y = queue[i];
      for (Elem s : g.gen_elems) {
        Elem z = g.product(g.product(g.inverse[s], y), s);
        if (!seen[z]) {
          seen[z] = true;
          queue.push_back(z);
        }
      }
    }
    std::sort(queue.begin(), queue.end());
    c.members = std::move(queue);
    unsigned ord = 1;
    for (Elem y = x; y != 0; y = g.product(y, x)) ++ord;
    c.order = ord;
    classes.push_back(std::move(c));
  }
  std::sort(classes.begin(), classes.end(), [](const ConjugacyClass& a, const ConjugacyClass& b) {
    if (a.order != b.order) return a.order < b.order;
    if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
    return a.representative < b.representative;
  });
  cd.classes_ = std::move(classes);
  cd.class_of_.assign(n, 0);
  unsigned exponent = 1;
  for (std::size_t c = 0; c < cd.classes_.size(); ++c) {
    for (Elem y : cd.classes_[c].members) cd.class_of_[y] = c;
    exponent = std::lcm(exponent, cd.classes_[c].order);
  }
  cd.exponent_ = exponent;
  cd.powers_.assign(exponent, std::vector<std::size_t>(cd.classes_.size(), 0));
  for (std::size_t c = 0; c < cd.classes_.size(); ++c) {
    Elem rep = cd.classes_[c].representative;
    Elem y = 0;
    for (unsigned k = 0; k < exponent; ++k) {
      cd.powers_[k][c] = cd.class_of_[y];
      y = g.product(y, rep);
    }
  }
}

std::size_t ClassData::power(std::size_t c, long long k) const {
  return power_map(k)[c];
}

std::span<const std::size_t> ClassData::power_map(long long k) const {
  long long e = exponent_;
  long long r = ((k % e) + e) % e;
  return powers_[static_cast<std::size_t>(r)];
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b, std::size_t order_bound) {
  if (a.order() * b.order() > order_bound)
    throw Error(ErrorCode::OrderBoundExceeded,
                "direct product order exceeds bound " + std::to_string(order_bound));
  const std::size_t da = a.degree();
  const std::size_t db = b.degree();
  std::vector<Perm> gens;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < a.generators().size(); ++i) {
    std::vector<Point> img(da + db);
    std::iota(img.begin(), img.end(), Point{0});
    auto src = a.generators()[i].images();
    std::copy(src.begin(), src.end(), img.begin());
    gens.emplace_back(std::move(img));
    names.push_back(a.generator_names()[i]);
  }
  for (std::size_t i = 0; i < b.generators().size(); ++i) {
    std::vector<Point> img(da + db);
    std::iota(img.begin(), img.end(), Point{0});
    auto src = b.generators()[i].images();
    for (std::size_t x = 0; x < db; ++x) img[da + x] = static_cast<Point>(da + src[x]);
    gens.emplace_back(std::move(img));
    std::string name = b.generator_names()[i];
    while (std::find(names.begin(), names.end(), name) != names.end()) name += "_2";
    names.push_back(std::move(name));
  }
  FiniteGroup g = FiniteGroup::from_generators(std::move(gens), std::move(names), da + db, order_bound);
  if (!a.label().empty() && !b.label().empty()) g = g.with_label(a.label() + "x" + b.label());
  return g;
}

// ---------------------------------------------------------------------------

GroupHom::GroupHom(FiniteGroup source, FiniteGroup target, std::vector<Elem> gen_images)
    : source_(std::move(source)), target_(std::move(target)), gen_images_(std::move(gen_images)) {
  if (gen_images_.size() != source_.generators().size())
    throw Error(ErrorCode::InvalidArgument, "one image per source generator required");
  for (Elem e : gen_images_)
    if (e >= target_.order()) throw Error(ErrorCode::InvalidArgument, "generator image outside target");
  map_.assign(source_.order(), target_.identity());
  for (Elem g = 1; g < source_.order(); ++g) {
    auto [parent, gen] = source_.parent_of(g);
    map_[g] = target_.mul(map_[parent], gen_images_[gen]);
  }
}

GroupHom::Verification GroupHom::verify() const {
  Verification v;
  v.is_hom = true;
  for (Elem x = 0; x < source_.order() && v.is_hom; ++x)
    for (std::size_t k = 0; k < gen_images_.size(); ++k)
      if (map_[source_.mul(x, source_.generator(k))] != target_.mul(map_[x], gen_images_[k])) {
        v.is_hom = false;
        break;
      }
  if (v.is_hom) {
    std::size_t kernel = 0;
    for (Elem x = 0; x < source_.order(); ++x)
      if (map_[x] == target_.identity()) ++kernel;
    v.is_injective = kernel == 1;
  }
  return v;
}

std::vector<std::size_t> GroupHom::class_fusion() const {
  const ClassData& sc = source_.classes();
  const ClassData& tc = target_.classes();
  std::vector<std::size_t> fusion(sc.count());
  for (std::size_t c = 0; c < sc.count(); ++c) fusion[c] = tc.class_of(map_[sc.at(c).representative]);
  return fusion;
}

std::size_t GroupHom::image_order() const {
  std::vector<Elem> img = map_;
  std::sort(img.begin(), img.end());
  return static_cast<std::size_t>(std::unique(img.begin(), img.end()) - img.begin());
}

void GroupHom::require_injective() const {
  Verification v = verify();
  if (!v.is_hom) throw Error(ErrorCode::NotInjective, "generator assignment is not a homomorphism");
  if (!v.is_injective) throw Error(ErrorCode::NotInjective, "homomorphism is not injective");
}

GroupHom GroupHom::identity(const FiniteGroup& g) {
  std::vector<Elem> imgs;
  for (std::size_t i = 0; i < g.generators().size(); ++i) imgs.push_back(g.generator(i));
  return GroupHom(g, g, std::move(imgs));
}

GroupHom GroupHom::conjugation(const FiniteGroup& g, Elem c) {
  std::vector<Elem> imgs;
  for (std::size_t i = 0; i < g.generators().size(); ++i)
    imgs.push_back(g.mul(g.mul(g.inv(c), g.generator(i)), c));
  return GroupHom(g, g, std::move(imgs));
}

GroupHom::Verification verify_hom(const GroupHom& h) { return h.verify(); }

}  // namespace kzq
