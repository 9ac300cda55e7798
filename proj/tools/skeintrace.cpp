#include "skeintrace/complex.hpp"
#include "skeintrace/errors.hpp"
#include "skeintrace/suites.hpp"
#include "skeintrace/uvir3d.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace skeintrace;
using nlohmann::json;

namespace {

struct Options {
  std::optional<std::string> ct, cb, angles, out;
  int jobs = 1;
  std::vector<std::string> args;
};

// exit 2
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json load_json(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception &e) {
    throw InputError(path + ": " + e.what());
  }
}

Mfld3Tri load_complex(const Options &o, const std::string &path) {
  auto j = load_json(path);
  if (o.angles) {
    auto a = load_json(*o.angles);
    if (!a.is_object())
      throw InputError(*o.angles + ": expected an object of tetrahedron angles");
    if (a.contains("angles"))
      a = a["angles"];
    for (auto it = a.begin(); it != a.end(); ++it)
      j["angles"][it.key()] = it.value();
  }
  return Mfld3Tri::from_json(j, j.value("allow_boundary", false));
}

Scalar ct_or(const Options &o, const Scalar &def) { return o.ct ? Scalar::parse(*o.ct) : def; }
Scalar cb_or(const Options &o, const Scalar &def) { return o.cb ? Scalar::parse(*o.cb) : def; }

struct Outcome {
  bool ok = true;
  json doc;
  std::ostringstream text;
};

void print_report(Outcome &r, const Report &rep) {
  r.text << rep.name << ": " << (rep.ok() ? "PASS" : "FAIL") << " (" << rep.checks.size()
         << " checks)\n";
  for (const auto &c : rep.checks) {
    r.text << "  " << (c.equal ? "ok   " : "FAIL ") << c.name << "\n";
    if (!c.equal)
      r.text << "       lhs: " << c.lhs << "\n       rhs: " << c.rhs << "\n       diff: "
             << c.first_diff << "\n";
  }
  r.ok = r.ok && rep.ok();
  r.doc["reports"].push_back(rep.to_json());
}

void result(Outcome &r, const std::string &label, const std::string &value) {
  r.text << label << ": " << value << "\n";
  r.doc["results"][label] = value;
}

using Handler = void (*)(const Options &, Outcome &);

void cmd_trace2d(const Options &o, Outcome &r) {
  auto s = SurfaceTri::from_json(load_json(o.args.at(0)));
  auto p = SplitPresentation2D::from_json(load_json(o.args.at(1)));
  StateSumOptions opt;
  opt.jobs = o.jobs;
  result(r, "trace", trace_surface(s, p, ct_or(o, 1), opt).str());
}

void cmd_trace3d(const Options &o, Outcome &r) {
  auto m = load_complex(o, o.args.at(0));
  auto p = SplitPresentation3D::from_json(load_json(o.args.at(1)));
  Scalar ct = ct_or(o, Scalar::Ct()), cb = cb_or(o, Scalar::Cb());
  StateSum3DOptions opt;
  opt.jobs = o.jobs;
  SQGM g(m);
  auto tr = trace_3d(m, p, ct, cb, opt);
  if (o.ct || o.cb)
    tr = g.reduce(tr.substitute_constants(ct, cb));
  result(r, "trace", g.render(tr));
}

void cmd_uvir2d(const Options &o, Outcome &r) {
  auto w = StatedWord::parse(o.args.at(0));
  Scalar ct = ct_or(o, 1);
  result(r, "word", w.str());
  result(r, "uv-ir", f_triangle(w).str());
  result(r, "evaluated", reduce_gl1(ev_triangle(f_triangle(w), ct)).str());
  result(r, "traced pi", reduce_gl1(pi_map(w).traced(ct)).str());
  print_report(r, compat_check_word(w, ct));
}

void cmd_uvir3d(const Options &o, Outcome &r) {
  auto m = load_complex(o, o.args.at(0));
  auto p = SplitPresentation3D::from_json(load_json(o.args.at(1)));
  Scalar ct = ct_or(o, Scalar::Ct()), cb = cb_or(o, Scalar::Cb());
  SQGM g(m);
  std::ostringstream web;
  for (int x : presentation_web(m, p))
    web << (web.tellp() ? " " : "") << x;
  result(r, "web", web.str());
  auto tr = recover_trace(m, p, std::nullopt, ct, cb);
  if (o.ct || o.cb)
    tr = g.reduce(tr.substitute_constants(ct, cb));
  result(r, "recovered trace", g.render(tr));
  print_report(r, compat_check_3d(m, p, ct, cb));
}

void cmd_compat(const Options &o, Outcome &r) {
  auto j = load_json(o.args.at(0));
  if (j.contains("triangles")) {
    auto s = SurfaceTri::from_json(j);
    auto p = SplitPresentation2D::from_json(load_json(o.args.at(1)));
    print_report(r, compat_check_2d(s, p, ct_or(o, 1)));
  } else if (j.contains("tetrahedra")) {
    auto m = load_complex(o, o.args.at(0));
    auto p = SplitPresentation3D::from_json(load_json(o.args.at(1)));
    print_report(r, compat_check_3d(m, p, ct_or(o, Scalar::Ct()), cb_or(o, Scalar::Cb())));
  } else {
    throw InputError(o.args.at(0) + ": neither \"triangles\" nor \"tetrahedra\"");
  }
}

void cmd_flip(const Options &o, Outcome &r) {
  auto s = SurfaceTri::from_json(load_json(o.args.at(0)));
  print_report(r, naturality_check_2d(s, o.args.at(1), ct_or(o, 1)));
}

void cmd_pachner(const Options &o, Outcome &r) {
  auto m = load_complex(o, o.args.at(0));
  std::optional<Mfld3Tri> after;
  if (o.args.size() > 2)
    after = load_complex(o, o.args[2]);
  print_report(r, phi_2_3(m, o.args.at(1), after).report);
}

void cmd_cone(const Options &o, Outcome &r) {
  auto m = load_complex(o, o.args.at(0));
  print_report(r, cone_3term_check(m, o.args.at(1)));
}

void cmd_fig8(const Options &o, Outcome &r) {
  auto run = run_figure8(o.jobs);
  r.text << "figure-8 knot, Ct = q^-1/2, Cb = 1\n";
  for (const auto &[k, v] : run.per_state)
    result(r, "state " + k, v);
  result(r, "total", run.total);
  result(r, "golden", run.golden);
  print_report(r, run.report);
}

void cmd_verify_all(const Options &o, Outcome &r) {
  for (const auto &rep : run_suites(builtin_suites(), o.jobs))
    print_report(r, rep);
}

int run(Handler h, const std::string &name, const Options &o) {
  Outcome r;
  r.doc["command"] = name;
  try {
    h(o, r);
  } catch (const InputError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  r.doc["ok"] = r.ok;
  std::cout << r.text.str() << (r.ok ? "PASS" : "FAIL") << "\n";
  if (o.out) {
    std::ofstream f(*o.out);
    if (!f) {
      std::cerr << "error: cannot write '" << *o.out << "'\n";
      return 2;
    }
    f << r.doc.dump(2) << "\n";
  }
  return r.ok ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Quantum trace and stated UV-IR computations on ideal triangulations"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--ct", o.ct, "value of Ct, e.g. q^-1/2");
  app.add_option("--cb", o.cb, "value of Cb");
  app.add_option("--angles", o.angles, "JSON file of tetrahedron angles")->check(CLI::ExistingFile);
  app.add_option("--out", o.out, "write the JSON report here");
  app.add_option("--jobs", o.jobs, "worker count")->check(CLI::PositiveNumber);

  struct Cmd {
    const char *name, *help;
    std::vector<const char *> args;
    std::size_t optional = 0;
    Handler h;
  };
  const std::vector<Cmd> cmds = {
      {"trace2d", "quantum trace of a 2d presentation", {"surface", "presentation"}, 0, cmd_trace2d},
      {"trace3d", "quantum trace of a 3d presentation", {"complex", "presentation"}, 0, cmd_trace3d},
      {"uvir2d", "UV-IR image of a stated word", {"word"}, 0, cmd_uvir2d},
      {"uvir3d", "glued UV-IR image and recovered trace", {"complex", "presentation"}, 0,
       cmd_uvir3d},
      {"compat", "compatibility square (2d or 3d)", {"triangulation", "presentation"}, 0,
       cmd_compat},
      {"flip-check", "naturality under the flip of an edge", {"surface", "edge"}, 0, cmd_flip},
      {"pachner-check", "2-3 move relations", {"complex", "face", "after"}, 1, cmd_pachner},
      {"cone-check", "gl1 cone point relations", {"complex", "face"}, 0, cmd_cone},
      {"fig8", "figure-8 knot demo", {}, 0, cmd_fig8},
      {"verify-all", "all built-in suites", {}, 0, cmd_verify_all},
  };
  std::vector<std::vector<std::string>> slots(cmds.size());
  std::vector<CLI::App *> subs;
  for (std::size_t i = 0; i < cmds.size(); ++i) {
    auto *sub = app.add_subcommand(cmds[i].name, cmds[i].help);
    slots[i].resize(cmds[i].args.size());
    for (std::size_t a = 0; a < cmds[i].args.size(); ++a) {
      auto *opt = sub->add_option(cmds[i].args[a], slots[i][a]);
      if (a + cmds[i].optional < cmds[i].args.size())
        opt->required();
    }
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }
  for (std::size_t i = 0; i < cmds.size(); ++i)
    if (subs[i]->parsed()) {
      for (std::size_t a = 0; a < slots[i].size(); ++a)
        if (subs[i]->count(cmds[i].args[a]))
          o.args.push_back(slots[i][a]);
      return run(cmds[i].h, cmds[i].name, o);
    }
  return 2;
}
