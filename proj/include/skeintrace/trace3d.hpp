#pragma once

#include "skeintrace/report.hpp"
#include "skeintrace/trace2d.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace skeintrace {

// ------------------------------------------------------------------- SQGM

// rank 3 per tetrahedron, names "<tet>.z", "<tet>.z'", "<tet>.z''";
// z' z = A z z' and cyclic
TorusPtr shape_torus(const Mfld3Tri &t);

class SQGM {
public:
  // default section: eliminate every z, then every z', keep z''
  explicit SQGM(const Mfld3Tri &t, std::vector<int> priority = {});

  const TorusPtr &torus() const { return torus_; }
  const std::vector<MonomialRelation> &vertex_relations() const { return vertex_; }
  const std::vector<MonomialRelation> &gluing_relations() const { return gluing_; }
  // the independent subset actually used for reduction
  const std::vector<MonomialRelation> &relations() const { return kept_; }
  const std::vector<int> &dropped() const { return dropped_; }
  const std::vector<int> &priority() const { return priority_; }

  // canonical representative, with Cb^2 = q Ct^2 applied
  TorusElem reduce(const TorusElem &e) const;
  bool equal(const TorusElem &a, const TorusElem &b) const;
  TorusElem gen(int tet, int type, int power = 1) const;
  TorusElem gen(const std::string &tet, int type, int power = 1) const;
  std::string render(const TorusElem &e) const;

private:
  TorusPtr torus_;
  std::vector<MonomialRelation> vertex_, gluing_, kept_;
  std::vector<int> dropped_, priority_;
  std::shared_ptr<Reducer> reducer_;
};

// The three cyclic rotations of 1 - Cb^-2 p^-2 - Cb^2 p''^2 for one tet.
std::array<TorusElem, 3> lagrangian_trinomials(const Mfld3Tri &t, int tet);
// e == x * L for a monomial x and one of the trinomials above
bool lagrangian_oracle(const Mfld3Tri &t, int tet, const TorusElem &e);

// ----------------------------------------------------------- presentations

// Triangle tokens live in block 1 or 2 and use gen alpha/beta/gamma; their
// states are positional as in 2d.  Biangle tokens use gen a/b/c and run
// from block 1 to block 2 when forward; states are [block 1 end, block 2 end].
struct Token3D {
  int block = 1;
  int gen = 0; // corner or slot 0..2
  bool biangle = false;
  bool forward = true;
  std::array<EndState, 2> states;
};

struct Suspension3D {
  std::string face;
  std::vector<Token3D> left, right;
};

struct SplitPresentation3D {
  std::vector<Suspension3D> suspensions;
  std::vector<std::string> states;
  std::vector<PrefactorTerm> prefactor;
  Scalar coefficient{1};

  static SplitPresentation3D from_json(const nlohmann::json &j);
  nlohmann::json to_json() const;
  std::vector<std::string> variables() const;
  Scalar prefactor_at(const std::map<std::string, int> &states) const;
};

int resolve_state(const EndState &e, const std::map<std::string, int> &states);
std::array<int, 2> resolve_states(const Token3D &t, const std::map<std::string, int> &states);

// bare cone indices (6*face + 3*block + slot) of the two ends of a token
std::array<int, 2> token_cones(const Mfld3Tri &t, int face, const Token3D &tok);

void validate(const Mfld3Tri &t, const SplitPresentation3D &p);

// ------------------------------------------------------------------ traces

// a1,b1,c1,a2,b2,c2 with block 2 mirrored; shared by every face
TorusPtr sf_local_torus();

// triangle token image in sf torus; block 2 is the mirror of block 1
TorusElem sf_token_weight(const Token3D &tok, int mu, int nu, const Scalar &ct,
                          const Scalar &cb);

// left word then right word, all states fixed
TorusElem trace_sf(const Mfld3Tri &t, const Suspension3D &s, const Scalar &ct = Scalar::Ct(),
                   const Scalar &cb = Scalar::Cb());

struct StateSum3DOptions {
  std::vector<std::string> order; // enumeration order; default sorted
  std::vector<int> face_order;    // tensor order of the suspensions
  int jobs = 1;
};

// one state assignment, in sf_big_torus, prefactor included
TorusElem sf_state_term(const Mfld3Tri &t, const SplitPresentation3D &p,
                        const std::map<std::string, int> &states, const Scalar &ct,
                        const Scalar &cb, const std::vector<int> &face_order = {});
// bare cone element -> shape torus; InvalidPresentation if some term is not
// a sum of edge cones
TorusElem to_shape_elem(const Mfld3Tri &t, const SQGM &g, const TorusElem &bare);

// unreduced state sum in the shape torus
TorusElem trace_3d_raw(const Mfld3Tri &t, const SplitPresentation3D &p,
                       const Scalar &ct = Scalar::Ct(), const Scalar &cb = Scalar::Cb(),
                       const StateSum3DOptions &opt = {});
TorusElem trace_3d(const Mfld3Tri &t, const SplitPresentation3D &p,
                   const Scalar &ct = Scalar::Ct(), const Scalar &cb = Scalar::Cb(),
                   const StateSum3DOptions &opt = {});

// all 2^n assignments of the variables, in the given order
std::vector<std::map<std::string, int>> assignments(const std::vector<std::string> &vars);

// --------------------------------------------------------------- figure 8

// The knot K_b on figure8_spec(): crosses S and N once each.
SplitPresentation3D figure8_presentation();
// y'' of Y and z'' of Z in the default section
struct Figure8Expected {
  std::map<std::string, TorusElem> per_state; // "+-", "-+", "--"
  TorusElem total;
};
Figure8Expected figure8_expected(const SQGM &g, const Scalar &ct = Scalar::Ct(),
                                 const Scalar &cb = Scalar::Cb());

// ------------------------------------------------------------------ 2-3

struct Phi23 {
  Mfld3Tri before, after;
  PachnerResult move;
  TorusHom map;
  Report report;
};

// Builds the 2-3 move on `face` (or checks that `after` is that move) and
// verifies the vertex, Lagrangian and horizontal biangle identities.
Phi23 phi_2_3(const Mfld3Tri &before, const std::string &face,
              const std::optional<Mfld3Tri> &after = std::nullopt);

} // namespace skeintrace
