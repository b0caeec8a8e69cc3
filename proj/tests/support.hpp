#ifndef COFIB_TESTS_SUPPORT_HPP_
#define COFIB_TESTS_SUPPORT_HPP_

// Instance generators shared by the unit tests and the acceptance binary.

#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cofib/group.hpp"
#include "cofib/groupoid.hpp"
#include "cofib/linalg.hpp"
#include "cofib/module.hpp"

namespace cofib::testing {

  inline FinGroupoid random_groupoid(std::mt19937& rng, std::size_t max_objects,
                                     std::size_t max_arrows) {
    auto const&              lib = small_groups();
    std::size_t              n   = 1 + rng() % max_objects;
    std::vector<FinGroupoid> parts;
    std::size_t              used = 0, arrows = 0;
    while (used < n) {
      std::size_t size = 1 + rng() % (n - used);
      auto const* g    = &lib[rng() % lib.size()].group;
      while (arrows + size * size * g->order() > max_arrows && size > 1) {
        --size;
      }
      if (arrows + size * size * g->order() > max_arrows) {
        g = &lib[0].group;
      }
      std::vector<std::string> objs;
      for (std::size_t i = 0; i < size; ++i) {
        objs.push_back("o" + std::to_string(used + i));
      }
      parts.push_back(connected_groupoid(objs, *g));
      arrows += size * size * g->order();
      used += size;
    }
    return coproduct_gpd(parts);
  }

  inline std::vector<std::string> names(std::string const& prefix, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(prefix + std::to_string(i));
    }
    return out;
  }

  // Z/n (n = 0 for Z) with a generator acting by multiplication by a unit.
  struct CyclicModule {
    std::string            name;
    AbPresentation         group;
    std::vector<IntMatrix> action;  // per element
  };

  // All characters G -> (Z/n)^x for n in {0, 2, 3, 4, 5}, the trivial and
  // regular modules.
  inline std::vector<CyclicModule> cyclic_module_catalog(FinGroup const& g) {
    std::vector<CyclicModule> out;
    auto                      gens  = generating_set(g);
    auto                      words = cayley_words(g, gens);
    for (Int n : {0, 2, 3, 4, 5}) {
      std::vector<Int> units;
      if (n == 0) {
        units = {1, -1};
      } else {
        for (Int u = 1; u < n; ++u) {
          if (std::gcd(u, n) == 1) {
            units.push_back(u);
          }
        }
      }
      auto mul = [n](Int a, Int b) { return n == 0 ? a * b : (a * b) % n; };
      auto inv = [&](Int a) {
        for (Int b : units) {
          if (mul(a, b) == 1) {
            return b;
          }
        }
        return Int{1};
      };
      std::vector<std::size_t> pick(gens.size(), 0);
      while (true) {
        std::vector<Int> chi(g.order(), 1);
        for (Elt e = 0; e < g.order(); ++e) {
          for (Letter l : words[e]) {
            Int u  = units[pick[generator_of(l)]];
            chi[e] = mul(chi[e], is_inverse(l) ? inv(u) : u);
          }
        }
        bool hom = true;
        for (Elt a = 0; a < g.order() && hom; ++a) {
          for (Elt b = 0; b < g.order() && hom; ++b) {
            hom = chi[g.mul(a, b)] == mul(chi[a], chi[b]);
          }
        }
        if (hom) {
          CyclicModule m;
          m.name  = "Z/" + std::to_string(n) + " chi";
          m.group = AbPresentation{1, n == 0 ? IntMatrix{} : IntMatrix{{n}}};
          for (Elt e = 0; e < g.order(); ++e) {
            m.name += (e ? "," : "=") + std::to_string(chi[e]);
            m.action.push_back({{chi[e]}});
          }
          out.push_back(std::move(m));
        }
        std::size_t i = 0;
        while (i < gens.size() && ++pick[i] == units.size()) {
          pick[i++] = 0;
        }
        if (i == gens.size()) {
          break;
        }
      }
    }
    CyclicModule reg;
    reg.name  = "Z[G]";
    reg.group = AbPresentation{g.order(), {}};
    for (Elt s = 0; s < g.order(); ++s) {
      IntMatrix a(g.order(), IntVector(g.order(), 0));
      for (Elt h = 0; h < g.order(); ++h) {
        a[h][g.mul(h, s)] = 1;
      }
      reg.action.push_back(std::move(a));
    }
    out.push_back(std::move(reg));
    return out;
  }

  // One homomorphism per orbit of Aut(H) acting by post-composition.
  inline std::vector<GroupHom> homs_up_to_target_automorphism(FinGroup const& g,
                                                              FinGroup const& h) {
    auto                   autos = automorphisms(h);
    std::set<GroupHom>     seen;
    std::vector<GroupHom>  out;
    for (auto const& f : homomorphisms(g, h)) {
      if (seen.count(f)) {
        continue;
      }
      out.push_back(f);
      for (auto const& a : autos) {
        GroupHom af(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) {
          af[i] = a[f[i]];
        }
        seen.insert(af);
      }
    }
    return out;
  }

  inline GpdMorphism group_morphism(GroupHom const& f) {
    return GpdMorphism{{0}, f};
  }

}  // namespace cofib::testing

#endif  // COFIB_TESTS_SUPPORT_HPP_
