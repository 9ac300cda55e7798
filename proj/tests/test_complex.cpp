#include "doctest.h"
#include "skeintrace/complex.hpp"
#include "skeintrace/errors.hpp"

#include <algorithm>
#include <set>

using namespace skeintrace;

namespace {

// <e,f> from counting the corners where f directly follows e (and back)
int sector_form(const SurfaceTri &s, const std::string &e, const std::string &f) {
  int forward = 0, backward = 0;
  for (const auto &t : s.triangles())
    for (int k = 0; k < 3; ++k) {
      const auto &from = t.edges[k], &to = t.edges[(k + 1) % 3];
      if (from == e && to == f)
        ++forward;
      if (from == f && to == e)
        ++backward;
    }
  return backward - forward;
}

std::vector<std::vector<std::string>> cyclic_normal(const SurfaceTri &s,
                                                    const std::string &from,
                                                    const std::string &to) {
  std::vector<std::vector<std::string>> out;
  for (const auto &t : s.triangles()) {
    std::vector<std::string> e(t.edges.begin(), t.edges.end());
    for (auto &x : e)
      if (x == from)
        x = to;
    std::rotate(e.begin(), std::min_element(e.begin(), e.end()), e.end());
    out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int sqgm_form(int i, int j) {
  if (i / 3 != j / 3)
    return 0;
  int a = i % 3, b = j % 3;
  if ((a + 1) % 3 == b)
    return -1;
  if ((b + 1) % 3 == a)
    return 1;
  return 0;
}

bool all_zero(const Mfld3Tri &m) {
  for (const auto &[what, r] : m.angle_residuals())
    if (!(r == AngleForm()))
      return false;
  return true;
}

Mfld3Tri equilateral(nlohmann::json spec) {
  for (const auto &t : spec["tetrahedra"])
    spec["angles"][t["id"].get<std::string>()] = {
        {"theta", "1/3*pi"}, {"thetap", "1/3*pi"}, {"thetapp", "1/3*pi"}};
  return Mfld3Tri::from_json(spec);
}

} // namespace

TEST_CASE("triangle torus") {
  auto t = triangle_torus();
  CHECK(t->m(0, 1) == -1);
  CHECK(t->m(1, 2) == -1);
  CHECK(t->m(2, 0) == -1);
  CHECK(triangle_torus(true)->m(0, 1) == 1);
}

TEST_CASE("surface form matches sector count") {
  auto s = SurfaceTri::from_json(flip_quad_spec());
  CHECK(s.edges().size() == 5);
  CHECK_FALSE(s.closed());
  CHECK(s.form("x", "y") == -1);
  for (const auto &e : s.edges())
    for (const auto &f : s.edges())
      CHECK(s.form(e, f) == sector_form(s, e, f));
  CHECK_THROWS_AS(s.sqts_torus(), HasBoundary);
  auto t = s.sqts_torus(true);
  CHECK(t->rank() == 5);
  CHECK(t->m(t->index("x"), t->index("y")) == -1);
}

TEST_CASE("surface form on a closed torus") {
  // once-punctured torus with two triangles
  auto s = SurfaceTri::build({{"T1", {"a", "b", "c"}}, {"T2", {"a", "b", "c"}}});
  CHECK(s.closed());
  for (const auto &e : s.edges())
    for (const auto &f : s.edges())
      CHECK(s.form(e, f) == sector_form(s, e, f));
  CHECK(s.form("a", "b") == -2);
  auto bare = s.bare_to_edges({1, 0, 0, 0, 1, 0});
  CHECK(bare == Vec{1, 1, 0});
}

TEST_CASE("flip") {
  auto s = SurfaceTri::from_json(flip_quad_spec());
  auto f = s.flip("x");
  CHECK(f.edges().size() == 5);
  CHECK(f.triangles()[0].edges == std::array<std::string, 3>{"y", "x'", "w"});
  CHECK(f.triangles()[1].edges == std::array<std::string, 3>{"z", "v", "x'"});
  for (const auto &e : f.edges())
    for (const auto &g : f.edges())
      CHECK(f.form(e, g) == sector_form(f, e, g));
  // flipping twice is the identity up to names
  auto back = f.flip("x'");
  CHECK(cyclic_normal(back, "x''", "x") == cyclic_normal(s, "", ""));
  CHECK_THROWS_AS(s.flip("y"), BoundaryEdge);
  CHECK_THROWS_AS(s.flip("nope"), UnknownId);
  auto self = SurfaceTri::build({{"T", {"a", "a", "b"}}});
  CHECK_THROWS_AS(self.flip("a"), SelfGlued);
}

TEST_CASE("surface json") {
  auto s = SurfaceTri::from_json(flip_quad_spec());
  CHECK(SurfaceTri::from_json(s.to_json()).to_json() == s.to_json());
  CHECK_THROWS_AS(SurfaceTri::from_json(nlohmann::json::parse(R"({"triangles": 3})")),
                  Malformed);
  CHECK_THROWS_AS(SurfaceTri::build({{"T", {"a", "a", "a"}}}), Malformed);
}

TEST_CASE("local edges") {
  std::set<int> seen;
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) {
      int e = local_edge(u, v);
      CHECK(edge_vertices(e) == std::make_pair(u, v));
      CHECK(local_edge(v, u) == e);
      seen.insert(e);
    }
  CHECK(seen.size() == 6);
  CHECK(edge_type(local_edge(0, 1)) == edge_type(local_edge(2, 3)));
  CHECK(edge_type(local_edge(0, 2)) == edge_type(local_edge(1, 3)));
  CHECK(edge_type(local_edge(0, 3)) == edge_type(local_edge(1, 2)));
}

TEST_CASE("figure-eight complex") {
  auto m = Mfld3Tri::from_json(figure8_spec());
  CHECK(m.tets().size() == 2);
  CHECK(m.faces().size() == 4);
  CHECK(m.boundary_faces().empty());
  CHECK(m.face_suspension_count() == 4);
  REQUIRE(m.edge_classes().size() == 2);
  for (const auto &c : m.edge_classes()) {
    CHECK(c.cones.size() == 6);
    CHECK(c.interior);
  }
  auto m2 = Mfld3Tri::from_json(m.to_json());
  CHECK(m2.to_json() == m.to_json());
  CHECK(all_zero(equilateral(figure8_spec())));
}

TEST_CASE("shape vectors") {
  auto m = Mfld3Tri::from_json(figure8_spec());
  auto big = m.sf_big_torus();
  CHECK(big->rank() == 24);
  for (int t = 0; t < 2; ++t)
    for (int e = 0; e < 6; ++e) {
      EdgeCone c{t, e};
      auto v = m.shape_vector(c);
      CHECK(m.bare_cones(c).size() == 2);
      auto s = m.to_shape(v);
      REQUIRE(s);
      CHECK(*s == unit_vec(6, m.shape_index(c)));
      // opposite edge cones
      auto [u, w] = edge_vertices(e);
      int o = 6 - u - w;
      int x = 0;
      while (x == u || x == w)
        ++x;
      EdgeCone opp{t, local_edge(x, o - x)};
      CHECK(m.shape_index(opp) == m.shape_index(c));
    }
  Vec half(24, 0);
  half[0] = 1;
  CHECK_FALSE(m.to_shape(half));
}

TEST_CASE("edge cone isometry") {
  for (auto spec : {figure8_spec(), bipyramid_spec(), edge_book_spec(4)}) {
    auto m = Mfld3Tri::from_json(spec);
    auto big = m.sf_big_torus();
    int n = static_cast<int>(m.tets().size());
    for (int a = 0; a < 6 * n; ++a)
      for (int b = 0; b < 6 * n; ++b) {
        EdgeCone ca{a / 6, a % 6}, cb{b / 6, b % 6};
        bool full = m.bare_cones(ca).size() == 2 && m.bare_cones(cb).size() == 2;
        if (!full)
          continue;
        CHECK(big->form_m(m.shape_vector(ca), m.shape_vector(cb)) ==
              sqgm_form(m.shape_index(ca), m.shape_index(cb)));
      }
  }
}

TEST_CASE("edge books") {
  for (int k = 3; k <= 6; ++k) {
    auto m = Mfld3Tri::from_json(edge_book_spec(k));
    int interior = 0;
    for (const auto &c : m.edge_classes())
      if (c.interior) {
        ++interior;
        CHECK(c.cones.size() == static_cast<std::size_t>(k));
      }
    CHECK(interior == 1);
  }
}

TEST_CASE("gluing validation") {
  auto spec = figure8_spec();
  auto bad = spec;
  // an orientation-preserving gluing
  bad["gluings"][0]["to"][1] = {"z1", "z2", "z3"};
  CHECK_THROWS_AS(Mfld3Tri::from_json(bad), OrientationClash);
  auto twice = spec;
  twice["gluings"][1]["to"] = twice["gluings"][0]["face"];
  CHECK_THROWS(Mfld3Tri::from_json(twice));
  auto open = spec;
  open["gluings"].erase(3);
  CHECK_THROWS_AS(Mfld3Tri::from_json(open), Malformed);
  CHECK_NOTHROW(Mfld3Tri::from_json(open, true));
  auto unknown = spec;
  unknown["gluings"][0]["face"][0] = "Q";
  CHECK_THROWS_AS(Mfld3Tri::from_json(unknown), UnknownId);
  CHECK_THROWS_AS(Mfld3Tri::from_json(nlohmann::json::parse("[]")), Malformed);
}

TEST_CASE("2-3 move on the bipyramid") {
  auto m = Mfld3Tri::from_json(bipyramid_spec());
  CHECK(m.face_suspension_count() == 7);
  auto r = pachner_2_3(m, "F");
  CHECK(r.after.tets().size() == 3);
  CHECK(r.after.face_suspension_count() == 9);
  CHECK(r.after.faces().size() == 3);
  int interior = 0;
  for (const auto &c : r.after.edge_classes())
    if (c.interior) {
      ++interior;
      CHECK(c.cones.size() == 3);
    }
  CHECK(interior == 1);
  CHECK(all_zero(r.after));
  CHECK(r.cone_map.size() == 6);
  for (const auto &[old, img] : r.cone_map) {
    (void)old;
    CHECK(r.after.class_of(img[0]) == r.after.class_of(img[1]));
  }
}

TEST_CASE("2-3 move on the figure-eight") {
  auto m = Mfld3Tri::from_json(figure8_spec());
  for (const auto &f : m.faces()) {
    auto r = pachner_2_3(m, f.name);
    CHECK(r.after.tets().size() == 3);
    CHECK(r.after.faces().size() == 6);
    CHECK(r.after.edge_classes().size() == 3);
    CHECK(all_zero(r.after) == false); // symbolic angles leave edge residuals
    auto eq = equilateral(figure8_spec());
    auto r2 = pachner_2_3(eq, f.name, AngleForm(Rat(1, 3)));
    CHECK(all_zero(r2.after));
  }
}

TEST_CASE("2-3 move errors") {
  auto m = Mfld3Tri::build({{"X", {"x0", "x1", "x2", "x3"}, {}}},
                           {{"L", "X", {"x0", "x1", "x2"}, "X", {"x0", "x1", "x3"}}},
                           true);
  CHECK_THROWS_AS(pachner_2_3(m, "L"), SelfAdjacentFace);
  CHECK_THROWS_AS(pachner_2_3(m, "zz"), UnknownId);
}
