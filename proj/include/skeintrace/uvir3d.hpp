#pragma once

#include "skeintrace/report.hpp"
#include "skeintrace/trace3d.hpp"
#include "skeintrace/uvir2d.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace skeintrace {

// -------------------------------------------------------------- angles

// Dihedral angle (in units of pi) at each bare cone, indexed 3*(block-1)+slot.
struct SfAngles {
  std::array<AngleForm, 6> theta;
};

// angles of the two tetrahedra on either side of `face`
SfAngles sf_angles(const Mfld3Tri &t, const std::string &face);
// fresh free symbols "<prefix>.a1" .. "<prefix>.c2"
SfAngles formal_sf_angles(const std::string &prefix = "th");

// ------------------------------------------------------------------ tori

// Two commuting lifts per biangle: "<k>.p" = ->x_S x_T*, "<k>.m" = ->x_S* x_T.
TorusPtr bigon_double_torus();

// tensor(hexagon "S", hexagon "T", bigon "bi"), rank 18.  The T hexagon is
// written in the coordinates of the mirror image of block 2: a block 2 token
// of corner k, orientation o and states (mu, nu) is read as the token of
// corner -k, orientation -o and states (nu, mu).
TorusPtr sf_double_cover_torus();

// Face relations of the double cover, one per corner and sheet:
// x_S* y_S . y_T* x_T == x_S* x_T . y_T* y_S (sheet 1) and the starred
// variant (sheet 2), as right relations without scalar.
struct FaceRelation {
  std::string name;
  Vec left, right; // Weyl exponents of the two sides
  MonomialRelation relation;
};
std::vector<FaceRelation> sf_face_relations();

// tensor(gl1 triangle "S", mirrored gl1 triangle "T", commuting "bi"), rank 9.
// T coordinates are the actual corners of block 2.
TorusPtr gl1_sf_torus();
// [alpha beta gamma] = 1 on each block and the three face relations
// arc_S(x->y) arc_T(y->x) == bi_x bi_y^-1; one of them is dependent
std::vector<MonomialRelation> gl1_sf_relations();

// tensor(sf_local_torus(), gl1_sf_torus()), rank 15
TorusPtr ev_sf_torus();
// reduce the gl1 coordinates of an ev_sf_torus element
TorusElem reduce_gl1_sf(const TorusElem &e);
// arriving minus leaving ends at the six bare cones
Vec sf_flux(const Vec &gl1);

// ------------------------------------------------------------- UV-IR map

// (-1)^b over the boundary points of one word, bare cones as sides
Scalar sign_sf(const std::vector<Token3D> &word);

// image of one token in sf_double_cover_torus(); zero on bad arcs
TorusElem f_sf_token(const Token3D &tok, const std::optional<SfAngles> &angles);
// sign times the product of the token images
TorusElem f_sf_word(const std::vector<Token3D> &word, const std::optional<SfAngles> &angles);
// F(left) . empty . F(right); states must be fixed
TorusElem f_sf(const Suspension3D &s, const std::optional<SfAngles> &angles);

// Bimodule map: each monomial splits as (hexagon part) . empty . (bigon
// part) and the two parts are evaluated separately, left then right.
TorusElem ev_sf(const TorusElem &h, const SfAngles &angles, const Scalar &ct = Scalar::Ct(),
                const Scalar &cb = Scalar::Cb());

// (Tr_Sf x id) of pi_Sf: trace weights with the gl1 arcs, times the sign
TorusElem pi_sf(const Suspension3D &s, const Scalar &ct = Scalar::Ct(),
                const Scalar &cb = Scalar::Cb());

// --------------------------------------------------------------- gluing

// tensor(shape_torus(t), web), one commuting web coordinate per edge cone
// (6 * tet + local edge) holding the flux through its first bare cone
TorusPtr glued_torus_3d(const Mfld3Tri &t);

// Multiply the per-face elements (face index, ev_sf_torus element), push the
// trace part to the shape torus and record the gl1 part by its flux.
// DegreeMismatch if the two bare cones of an edge cone do not cancel.
TorusElem glue_3d(const Mfld3Tri &t, const std::vector<std::pair<int, TorusElem>> &parts);

// gl1 only: per-face gl1_sf_torus() elements to the web coordinates
TorusElem gl1_glue(const Mfld3Tri &t, const std::vector<std::pair<int, TorusElem>> &parts);

// ---------------------------------------------------------- compatibility

Report compat_check_3d(const Mfld3Tri &t, const SplitPresentation3D &p,
                       const Scalar &ct = Scalar::Ct(), const Scalar &cb = Scalar::Cb());

// web coordinates of the presentation's own strands
Vec presentation_web(const Mfld3Tri &t, const SplitPresentation3D &p);

// p_L applied to the glued UV-IR image: keep the terms whose web is `ref`
// (default: presentation_web), divide by the reference scalar, reduce.
TorusElem recover_trace(const Mfld3Tri &t, const SplitPresentation3D &p,
                        const std::optional<Vec> &ref = std::nullopt,
                        const Scalar &ct = Scalar::Ct(), const Scalar &cb = Scalar::Cb());

// x_k x_(k+1) == (-A)^(1/2) x_(k+2)^-1 modulo [alpha beta gamma] = 1
Report gl1_detour_check();

// ------------------------------------------------------------ cone point

// x x' = q^2 x' x and cyclic; Weyl normalised so that [x x' x''] = q^-1 x x' x''
TorusPtr cone_torus();
MonomialRelation cone_central(); // [x x' x''] = -1

// Sign, 3-term transport and cone torus identities for the 2-3 move on
// `face`.  NotAPachnerPair if the move does not apply.
Report cone_3term_check(const Mfld3Tri &before, const std::string &face,
                        const std::optional<AngleForm> &free_angle = std::nullopt);

} // namespace skeintrace
