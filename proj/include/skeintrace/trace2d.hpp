#pragma once

#include "skeintrace/complex.hpp"

#include <array>
#include <string>
#include <vector>

#include "json.hpp"

namespace skeintrace {

// Corner arcs of a triangle (a,b,c): alpha = ->bc, beta = ->ca, gamma = ->ab.
// The arc of corner k runs from slot (k+1)%3 to slot (k+2)%3.
enum Corner { Alpha = 0, Beta = 1, Gamma = 2 };

int corner_from(const std::string &s);
std::string corner_name(int corner);
std::pair<int, int> corner_slots(int corner);

// States are positional: mu sits on the first slot of the corner, nu on the
// second, whatever the orientation.
bool is_bad_arc(int mu, int nu);

// Image in the extended triangle torus.  Zero on the bad arc.
TorusElem corner_weight(int corner, int mu, int nu, const Scalar &ct = 1);

struct EndState {
  int value = 0;   // +1 / -1 when fixed
  std::string var; // nonempty for a state variable
  int sign = 1;    // "-eps" is eps with sign -1
  bool fixed() const { return var.empty(); }
  // UnresolvedState if the variable is missing
  int resolve(const std::map<std::string, int> &states) const;
};

struct Strand2D {
  std::string tri;
  int corner = Alpha;
  bool forward = true;
  std::array<EndState, 2> states;
};

// q^(half_q * eps / 2)
struct PrefactorTerm {
  std::string var;
  Rat half_q{0};
};

struct SplitPresentation2D {
  // listed from top to bottom
  std::vector<Strand2D> strands;
  std::vector<PrefactorTerm> prefactor;
  Scalar coefficient{1};

  static SplitPresentation2D from_json(const nlohmann::json &j);
  nlohmann::json to_json() const;
  // sorted
  std::vector<std::string> variables() const;
  Scalar prefactor_at(const std::map<std::string, int> &states) const;
};

void validate(const SurfaceTri &s, const SplitPresentation2D &p);

struct StateSumOptions {
  std::vector<std::string> order; // enumeration order; default sorted
  int jobs = 1;
};

// Product of the corner weights of every strand for one assignment, in the
// bare edge torus.  Zero if any strand is bad.
TorusElem bare_weight(const SurfaceTri &s, const SplitPresentation2D &p,
                      const std::map<std::string, int> &states, const Scalar &ct = 1);

// Lands in sqts_torus(true); boundary edges carry fixed states.
TorusElem trace_surface(const SurfaceTri &s, const SplitPresentation2D &p,
                        const Scalar &ct = 1, const StateSumOptions &opt = {});

// Push a balanced bare-edge element to the edge torus.
TorusElem push_to_edges(const SurfaceTri &s, const TorusElem &bare);

// Even part of the transition map for the flip of `edge`.  Works termwise;
// every term must be even and its quadrilateral part must be a table entry,
// a rotation, an inverse of either, or a power of the diagonal.
TorusElem flip_even(const SurfaceTri &s, const std::string &edge, const TorusElem &m,
                    const Scalar &ct = 1);

} // namespace skeintrace
