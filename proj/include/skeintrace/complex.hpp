#pragma once

#include "skeintrace/qtorus.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace skeintrace {

// Extended triangle torus: <a,b> = <b,c> = <c,a> = -1, i.e. b a = A a b.
// `reversed` flips the cycle (second face-suspension block).
TorusPtr triangle_torus(bool reversed = false);

// ---------------------------------------------------------------- surfaces

struct Triangle {
  std::string id;
  std::array<std::string, 3> edges; // counterclockwise
};

struct Slot {
  int tri;
  int slot;
  bool operator==(const Slot &) const = default;
};

class SurfaceTri {
public:
  static SurfaceTri build(std::vector<Triangle> tris);
  static SurfaceTri from_json(const nlohmann::json &j);
  nlohmann::json to_json() const;

  const std::vector<Triangle> &triangles() const { return tris_; }
  const std::vector<std::string> &edges() const { return edges_; }
  const std::vector<Slot> &slots(const std::string &edge) const;
  bool is_boundary(const std::string &edge) const;
  bool closed() const;
  int triangle_index(const std::string &id) const;
  int edge_index(const std::string &edge) const;

  // bare edge of (tri, slot) has index 3*tri + slot
  TorusPtr bare_torus() const;
  // rank = number of edge classes; boundary edges allowed only on request
  TorusPtr sqts_torus(bool allow_boundary = false) const;
  Vec bare_to_edges(const Vec &bare) const;
  int form(const std::string &e, const std::string &f) const;

  SurfaceTri flip(const std::string &edge) const;

private:
  std::vector<Triangle> tris_;
  std::vector<std::string> edges_;
  std::map<std::string, std::vector<Slot>> slots_;
};

// ------------------------------------------------------------ 3-manifolds

// local edge index 0..5 for the pairs 01,02,03,12,13,23
int local_edge(int u, int v);
std::pair<int, int> edge_vertices(int e);
// 0 for 01/23 (z), 1 for 02/13 (z'), 2 for 03/12 (z'')
int edge_type(int e);

struct Tet {
  std::string id;
  std::array<std::string, 4> v;
  std::array<AngleForm, 3> angle; // theta, theta', theta''
  int vertex(const std::string &name) const;
};

struct FaceSide {
  int tet;
  int opp; // local vertex opposite the face
};

// A face suspension: the glued pair of faces.  Block 1 ("top") is the
// `face` side.  Bare cones a,b,c of block 1 are the edges (jk, kl, lj)
// with (opp,j,k,l) an even permutation; block 2 cones are their images.
struct FaceSusp {
  std::string name;
  FaceSide top, bottom;
  std::array<int, 4> map; // top local vertex -> bottom local vertex
  std::array<int, 3> top_edge;    // local edges of the top tet for a1,b1,c1
  std::array<int, 3> bottom_edge; // local edges of the bottom tet for a2,b2,c2
};

struct EdgeCone {
  int tet;
  int edge; // local edge index
  bool operator<(const EdgeCone &o) const {
    return tet != o.tet ? tet < o.tet : edge < o.edge;
  }
  bool operator==(const EdgeCone &) const = default;
};

struct EdgeClass {
  std::string name;
  std::vector<EdgeCone> cones;
  bool interior = true;
};

struct BoundaryFace {
  FaceSide side;
};

class Mfld3Tri {
public:
  struct GluingSpec {
    std::string name;
    std::string tet1;
    std::array<std::string, 3> verts1;
    std::string tet2;
    std::array<std::string, 3> verts2;
  };

  static Mfld3Tri build(std::vector<Tet> tets, std::vector<GluingSpec> gluings,
                        bool allow_boundary = false);
  static Mfld3Tri from_json(const nlohmann::json &j, bool allow_boundary = false);
  nlohmann::json to_json() const;

  const std::vector<Tet> &tets() const { return tets_; }
  const std::vector<FaceSusp> &faces() const { return faces_; }
  const std::vector<GluingSpec> &gluing_specs() const { return specs_; }
  const std::vector<EdgeClass> &edge_classes() const { return classes_; }
  const std::vector<BoundaryFace> &boundary_faces() const { return boundary_; }
  int tet_index(const std::string &id) const;
  int face_index(const std::string &name) const;
  int class_of(const EdgeCone &c) const;
  int face_suspension_count() const {
    return static_cast<int>(faces_.size() + boundary_.size());
  }

  // rank-6 torus of one face suspension; names a1,b1,c1,a2,b2,c2
  TorusPtr sf_torus(const std::string &face) const;
  // tensor over all glued faces, prefixed by face name
  TorusPtr sf_big_torus() const;
  // bare cone index 6*face + 3*(block-1) + slot at an edge cone, if any
  std::vector<int> bare_cones(const EdgeCone &c) const;
  Vec shape_vector(const EdgeCone &c) const;
  // SQGM generator index 3*tet + type
  int shape_index(const EdgeCone &c) const { return 3 * c.tet + edge_type(c.edge); }
  // bare-cone vector -> edge-cone shape vector; nullopt if not a sum of
  // shape vectors
  std::optional<Vec> to_shape(const Vec &bare) const;

  // residuals of the angle conditions (zero forms when satisfied)
  std::vector<std::pair<std::string, AngleForm>> angle_residuals() const;
  // angle at a local edge of a tet
  AngleForm angle_at(const EdgeCone &c) const { return tets_[c.tet].angle[edge_type(c.edge)]; }

private:
  std::vector<Tet> tets_;
  std::vector<GluingSpec> specs_;
  std::vector<FaceSusp> faces_;
  std::vector<BoundaryFace> boundary_;
  std::vector<EdgeClass> classes_;
  std::map<EdgeCone, int> class_of_;
  // (tet, opp) -> (face index, block 0/1)
  std::map<std::pair<int, int>, std::pair<int, int>> face_of_;
};

struct PachnerResult {
  Mfld3Tri after;
  std::string top, bottom;           // old tet ids
  std::array<std::string, 3> fresh;  // new tet ids, for face edges bc, bd, cd
  std::string apex_top, apex_bottom; // vertex names a, e
  std::array<std::string, 3> face_vertices; // b, c, d (top naming)
  // old edge cone (containing an apex) -> the two new edge cones at that edge
  std::map<EdgeCone, std::array<EdgeCone, 2>> cone_map;
  AngleForm free_angle;
};

PachnerResult pachner_2_3(const Mfld3Tri &t, const std::string &face,
                          std::optional<AngleForm> free_angle = std::nullopt);

// built-in complexes
nlohmann::json figure8_spec();
nlohmann::json bipyramid_spec();
// k tetrahedra around one interior edge "ab"
nlohmann::json edge_book_spec(int k);
nlohmann::json flip_quad_spec();

} // namespace skeintrace
