#pragma once

#include "skeintrace/report.hpp"
#include "skeintrace/trace2d.hpp"

#include <array>
#include <string>
#include <vector>

namespace skeintrace {

// ------------------------------------------------------------------ tori

// Generators alpha1, beta2, gamma1, alpha2, beta1, gamma2 (indices 0..5).
// Lifts: alpha1 = ->b*c, alpha2 = ->bc*, beta1 = ->c*a, beta2 = ->ca*,
// gamma1 = ->a*b, gamma2 = ->ab*.  The hexagon reads a, b*, c, a*, b, c*.
// Cyclically adjacent generators q-commute, the two triples
// (alpha1, gamma1, beta1) and (beta2, alpha2, gamma2) anticommute.
TorusPtr hexagon_torus(bool reversed = false);
MonomialRelation hexagon_central(); // [alpha1 beta2 gamma1 alpha2 beta1 gamma2] = -1

// index of the lift of corner k on sheet 1 or 2
int hex_gen(int corner, int sheet);

// alpha beta = (-A) beta alpha and cyclic
TorusPtr gl1_triangle_torus(bool reversed = false);
MonomialRelation gl1_central(); // [alpha beta gamma] = 1

// tensor(triangle_torus(), gl1_triangle_torus()); names T.a .. gl1.gamma
TorusPtr ev_target_torus();

// ----------------------------------------------------------- stated words

// A word on one triangle; tokens are listed top to bottom and only the
// corner, orientation and states are used.
struct StatedWord {
  std::vector<Strand2D> tokens;

  static StatedWord parse(const std::string &s); // e.g. "->a-+ <-b++"
  std::string str() const;
  StatedWord operator*(const StatedWord &o) const; // stacking, this on top
  bool fixed() const;
};

Strand2D token(int corner, bool forward, int mu, int nu);

struct BoundaryPoint {
  int slot;
  bool out; // the strand leaves the triangle side here
  int state;
  int height; // token index; smaller is higher
};

std::vector<BoundaryPoint> boundary_points(const StatedWord &w);

// +-1/2 table for two points on the same side, upper first
Rat b_pair_value(const BoundaryPoint &upper, const BoundaryPoint &lower);

// values in [0, 2)
Rat b_of(const StatedWord &w);
Rat b_of(const StatedWord &w1, const StatedWord &w2);
// (-1)^b with (-1)^(1/2) = zeta
Scalar sign_of(const Rat &b);

struct PiImage {
  std::vector<std::pair<int, std::array<int, 2>>> sl2; // corner, states
  std::vector<std::pair<int, int>> gl1;                // corner, +1 forward / -1 backward
  Scalar sign{1};

  // (Tr x id) of the image, in ev_target_torus()
  TorusElem traced(const Scalar &ct = 1) const;
};

PiImage pi_map(const StatedWord &w);

std::pair<StatedWord, Scalar> twisted_mul(const StatedWord &w1, const StatedWord &w2);

// ------------------------------------------------------------- UV-IR map

// image of a single token; zero on the bad arc
TorusElem f_token(const Strand2D &t);
// A word is a stacked diagram; its image is (-1)^b(w) times the product of
// the token images, so f_triangle(w1 w2) twisted equals f(w1) f(w2).
TorusElem f_triangle(const StatedWord &w);

TorusHom ev_triangle_hom(const Scalar &ct = 1);
TorusElem ev_triangle(const TorusElem &h, const Scalar &ct = 1);
// reduce modulo [alpha beta gamma] = 1
TorusElem reduce_gl1(const TorusElem &e);

// ------------------------------------------------------- glued surfaces

// tensor of hexagon tori, one block per triangle (prefixed by its id)
TorusPtr hex_cover_torus(const SurfaceTri &s);
// tensor of ev targets, one block per triangle
TorusPtr ev_cover_torus(const SurfaceTri &s);
TorusHom ev_cover_hom(const SurfaceTri &s, const Scalar &ct = 1);

// tensor(sqts_torus(true), web torus on `web_edges`); web coordinates commute
TorusPtr glued_torus(const SurfaceTri &s, const std::vector<std::string> &web_edges);

// Push an element of the ev cover to the glued torus.  The gl1 part is
// recorded by its flux through each bare edge (ends arriving minus ends
// leaving); the two sides of an interior edge must cancel.  Edges not in
// `web_edges` are dropped from the web coordinates.
TorusElem glue_2d(const SurfaceTri &s, const TorusElem &e,
                  const std::vector<std::string> &web_edges);

Report compat_check_2d(const SurfaceTri &s, const SplitPresentation2D &p, const Scalar &ct = 1);
Report compat_check_word(const StatedWord &w, const Scalar &ct = 1);

// -------------------------------------------------------- flip of an edge

// Quadrilateral around `edge`: roles y, z (T1) and v, w (T2) as in the flip.
// Generators: four corner tangles on two sheets and the sheet-1 longitude
// w -> z.  Images are recorded in both hexagon covers.
struct QuadCover {
  SurfaceTri before, after;
  std::string edge, fresh;
  std::array<std::string, 4> outer; // y, z, v, w
  TorusPtr gens;                    // rank 9
  std::vector<TorusElem> before_images, after_images;
};

QuadCover quad_cover(const SurfaceTri &s, const std::string &edge);

// One piece of a gl1 arc in the hexagon cover of triangle `tri`, running
// between lifts of two of its sides.  Adjacent sides give a generator or its
// inverse, sides two apart the Weyl product of the two steps.
struct LiftStep {
  int tri;
  std::string from;
  bool from_star;
  std::string to;
  bool to_star;
};

Vec lift_vector(const SurfaceTri &s, const LiftStep &step);
TorusElem lift_path(const SurfaceTri &s, const std::vector<LiftStep> &steps);

TorusElem quad_embed(const QuadCover &qc, const TorusElem &g);
TorusElem psi_flip(const QuadCover &qc, const TorusElem &g);

// Checked on the quadrilateral cut out of `s`.
Report naturality_check_2d(const SurfaceTri &s, const std::string &edge, const Scalar &ct = 1);

} // namespace skeintrace
