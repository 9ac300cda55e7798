#pragma once

#include "skeintrace/trace3d.hpp"
#include "support.hpp"

#include <numeric>

namespace testsupport {

// Random tokens on every glued face; state variables join two endpoints
// that lie on one edge class.
inline skeintrace::SplitPresentation3D random_presentation_3d(const skeintrace::Mfld3Tri &m,
                                                              int max_vars = 3) {
  using namespace skeintrace;
  SplitPresentation3D p;
  int nf = static_cast<int>(m.faces().size());
  std::vector<int> root(6 * nf);
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](int x) {
    while (root[x] != x)
      x = root[x] = root[root[x]];
    return x;
  };
  for (int t = 0; t < static_cast<int>(m.tets().size()); ++t)
    for (int e = 0; e < 6; ++e) {
      auto bs = m.bare_cones({t, e});
      for (std::size_t k = 1; k < bs.size(); ++k)
        root[find(bs[0])] = find(bs[k]);
    }
  for (int f = 0; f < nf; ++f)
    for (int s = 0; s < 3; ++s)
      root[find(6 * f + s)] = find(6 * f + 3 + s);

  struct End {
    int sus, side, tok, k, cone;
  };
  std::vector<End> ends;
  for (int f = 0; f < nf; ++f) {
    Suspension3D s{m.faces()[f].name, {}, {}};
    for (int side = 0; side < 2; ++side) {
      int n = uniform(0, 2);
      for (int i = 0; i < n; ++i) {
        Token3D t;
        t.biangle = side == 1;
        t.block = t.biangle ? 1 : uniform(1, 2);
        t.gen = uniform(0, 2);
        t.forward = uniform(0, 1);
        for (auto &e : t.states)
          e.value = uniform(0, 1) ? 1 : -1;
        auto word = side ? &s.right : &s.left;
        auto cones = token_cones(m, f, t);
        for (int k = 0; k < 2; ++k)
          ends.push_back({static_cast<int>(p.suspensions.size()), side,
                          static_cast<int>(word->size()), k, cones[k]});
        word->push_back(t);
      }
    }
    p.suspensions.push_back(s);
  }
  int vars = 0;
  for (int tries = 0; tries < 20 && vars < max_vars && ends.size() >= 2; ++tries) {
    int i = uniform(0, static_cast<int>(ends.size()) - 1);
    int j = uniform(0, static_cast<int>(ends.size()) - 1);
    if (i == j || find(ends[i].cone) != find(ends[j].cone))
      continue;
    std::string v = "v" + std::to_string(vars++);
    for (int x : {i, j}) {
      auto &s = p.suspensions[ends[x].sus];
      auto &tok = (ends[x].side ? s.right : s.left)[ends[x].tok];
      tok.states[ends[x].k] = EndState{0, v, uniform(0, 1) ? 1 : -1};
    }
    p.states.push_back(v);
    if (uniform(0, 1))
      p.prefactor.push_back({v, Rat(uniform(-2, 2))});
    int a = std::max(i, j), b = std::min(i, j);
    ends.erase(ends.begin() + a);
    ends.erase(ends.begin() + b);
  }
  return p;
}

} // namespace testsupport
