#include "tiltsmith/groupalg.hpp"

#include "tiltsmith/error.hpp"

#include <map>
#include <sstream>

namespace tiltsmith {

Perm perm_compose(const Perm& a, const Perm& b) {
  Perm c(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) c[x] = a[b[x]];
  return c;
}

Perm perm_inverse(const Perm& a) {
  Perm c(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) c[a[x]] = static_cast<int>(x);
  return c;
}

std::string perm_cycles(const Perm& a) {
  std::ostringstream os;
  std::vector<char> seen(a.size(), 0);
  bool any = false;
  for (std::size_t s = 0; s < a.size(); ++s) {
    if (seen[s] || a[s] == static_cast<int>(s)) continue;
    any = true;
    os << '(';
    std::size_t x = s;
    bool first = true;
    while (!seen[x]) {
      seen[x] = 1;
      if (!first) os << ' ';
      os << x + 1;
      first = false;
      x = static_cast<std::size_t>(a[x]);
    }
    os << ')';
  }
  if (!any) return "()";
  return os.str();
}

std::vector<Perm> enumerate_group(const PermGroupPresentation& g, int cap) {
  require(g.degree >= 1, ErrorKind::Config, "permutation degree must be positive");
  for (const Perm& p : g.generators) {
    require(static_cast<int>(p.size()) == g.degree, ErrorKind::Config,
            "generator has wrong degree");
    std::vector<char> hit(g.degree, 0);
    for (int x : p) {
      require(x >= 0 && x < g.degree && !hit[x], ErrorKind::Config, "generator is not a bijection");
      hit[x] = 1;
    }
  }
  Perm id(g.degree);
  for (int i = 0; i < g.degree; ++i) id[i] = i;
  std::vector<Perm> elems{id};
  std::map<Perm, int> seen{{id, 0}};
  for (std::size_t head = 0; head < elems.size(); ++head)
    for (const Perm& s : g.generators) {
      Perm h = perm_compose(s, elems[head]);
      if (seen.count(h)) continue;
      require(static_cast<int>(elems.size()) < cap, ErrorKind::Config, "group order exceeds cap");
      seen.emplace(h, static_cast<int>(elems.size()));
      elems.push_back(std::move(h));
    }
  if (g.declared_order > 0)
    require(static_cast<int>(elems.size()) == g.declared_order, ErrorKind::Config,
            g.name + ": generated order " + std::to_string(elems.size()) +
                " differs from declared order " + std::to_string(g.declared_order));
  return elems;
}

GroupAlgebra group_algebra(const PermGroupPresentation& g, FieldPtr field) {
  GroupAlgebra ga;
  ga.elements = enumerate_group(g);
  const int n = static_cast<int>(ga.elements.size());
  std::map<Perm, int> index;
  for (int i = 0; i < n; ++i) index.emplace(ga.elements[i], i);
  std::vector<Algebra::Triple> triples;
  triples.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      triples.push_back({i, j, index.at(perm_compose(ga.elements[i], ga.elements[j])), 1});
  std::vector<std::string> labels;
  for (const Perm& p : ga.elements) labels.push_back(perm_cycles(p));
  Elem unit(n, 0), form(n, 0);
  unit[0] = 1;
  form[0] = 1;
  std::vector<Elem> gens;
  for (const Perm& s : g.generators) {
    const int k = index.at(s);
    ga.generator_index.push_back(k);
    Elem e(n, 0);
    e[k] = 1;
    gens.push_back(e);
  }
  ga.algebra = Algebra::make(std::move(field), std::move(labels), triples, unit, form, gens);
  require(ga.algebra->generators().size() == g.generators.size(), ErrorKind::Internal,
          "group generators do not generate the group algebra");
  return ga;
}

ModuleRep GroupAlgebra::module(const std::vector<Matrix>& generator_images) const {
  return ModuleRep::from_generators(algebra, generator_images.empty() ? 0 : generator_images[0].rows(),
                                    generator_images, true);
}

ModuleRep GroupAlgebra::trivial() const {
  std::vector<Matrix> gens(generator_index.size(), Matrix::identity(algebra->field(), 1));
  return module(gens);
}

int GroupAlgebra::index_of(const Perm& g) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i] == g) return static_cast<int>(i);
  fail(ErrorKind::Precondition, "element not in group");
}

}  // namespace tiltsmith
