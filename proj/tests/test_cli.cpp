#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "nestkit/core.hpp"
#include "nestkit/decomp.hpp"
#include "nestkit/drawing.hpp"
#include "nestkit/gens.hpp"
#include "nestkit/json_io.hpp"
#include "nestkit/oracle.hpp"
#include "nestkit/report.hpp"

using namespace nestkit;
using Json = nlohmann::ordered_json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

const std::string& work_dir() {
  static const std::string dir = [] {
    char tmpl[] = "/tmp/nestkit_cli_XXXXXX";
    const char* d = mkdtemp(tmpl);
    return std::string(d ? d : "/tmp");
  }();
  return dir;
}

std::string write_file(const std::string& name, const std::string& bytes) {
  const std::string path = work_dir() + "/" + name;
  std::ofstream(path, std::ios::binary) << bytes;
  return path;
}

RunResult run(const std::string& args, const std::string& env = "") {
  const std::string out = work_dir() + "/stdout.bin";
  const std::string err = work_dir() + "/stderr.bin";
  const std::string cmd =
      env + (env.empty() ? "" : " ") + NESTKIT_BIN + " " + args + " >" + out + " 2>" + err;
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp_file(out);
  r.err = slurp_file(err);
  return r;
}

// Report lines with timing removed, for comparing runs.
std::vector<Json> reports_of(const std::string& err) {
  std::vector<Json> lines;
  std::istringstream ss(err);
  for (std::string line; std::getline(ss, line);) {
    Json j = Json::parse(line);
    j.erase("elapsed_ms");
    lines.push_back(std::move(j));
  }
  return lines;
}

}  // namespace

TEST_CASE("gen piped into find-nest meets the documented example") {
  RunResult gen = run("gen concentric 4");
  REQUIRE(gen.code == 0);
  const std::string graph_path = write_file("c4.json", gen.out);
  CHECK(gen.out == emit_graph(gens::concentric(4)) + "\n");

  RunResult fn = run("find-nest --k 4 " + graph_path);
  REQUIRE(fn.code == 0);
  const Json nest = Json::parse(fn.out);
  CHECK(nest["s"] == 0);
  CHECK(nest["X"].empty());
  CHECK(nest["cycles"].size() == 4);
  CHECK(nest["guaranteed"] == true);

  const auto reports = reports_of(fn.err);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0]["command"] == "find-nest");
  CHECK(reports[0]["outcome"] == "nest");
  CHECK(reports[0]["metrics"]["size"] == 4);
  CHECK(reports[0]["guaranteed"] == true);
  CHECK(reports[0]["version"] == std::string(kVersion));
  CHECK(reports[0]["input_digest"] == digest_hex(gen.out));
}

TEST_CASE("budget prints the theorem constants") {
  RunResult two = run("budget --k 2 --r 0");
  REQUIRE(two.code == 0);
  Json j = Json::parse(two.out);
  CHECK(j["l"] == 21);
  CHECK(j["t"] == 177);
  CHECK(j["t_prime"] == 213);

  RunResult one = run("budget --k 1 --r 0");
  REQUIRE(one.code == 0);
  j = Json::parse(one.out);
  CHECK(j["l"] == 18.5);
  CHECK(j["t"] == 79);
  CHECK(j["t_prime"] == 110);
}

TEST_CASE("generated graphs round-trip through the binary byte for byte") {
  const std::vector<std::pair<std::string, PlaneGraph>> cases = {
      {"gen concentric 5", gens::concentric(5)},
      {"gen one-nest 4", gens::one_nest(4)},
      {"gen bipyramid 8", gens::bipyramid(8)},
      {"gen grid 4 5", gens::grid_triangulation(4, 5)},
      {"gen apollonian 3 --seed 11", gens::apollonian(3, 11)},
      {"gen random 40 --seed 3", gens::random_triangulation(40, 3)},
  };
  for (const auto& [args, g] : cases) {
    RunResult r = run(args);
    REQUIRE(r.code == 0);
    CHECK(r.out == emit_graph(g) + "\n");
    CHECK(emit_graph(parse_graph(r.out)) + "\n" == r.out);
  }
  CHECK(run("gen random 40 --seed 4").out != run("gen random 40 --seed 3").out);
  CHECK(run("gen mystery 3").code == 2);
}

TEST_CASE("verify accepts the real nest and rejects a tampered one") {
  const std::string graph_path =
      write_file("v_c4.json", emit_graph(gens::concentric(4)));
  RunResult fn = run("find-nest --k 4 " + graph_path);
  REQUIRE(fn.code == 0);
  const std::string nest_path = write_file("v_nest.json", fn.out);

  RunResult ok = run("verify --nest " + nest_path + " " + graph_path);
  CHECK(ok.code == 0);
  CHECK(Json::parse(ok.out)["ok"] == true);

  Json tampered = Json::parse(fn.out);
  tampered["cycles"][3] = tampered["cycles"][0];  // duplicate ring
  const std::string bad_path = write_file("v_bad.json", tampered.dump());
  RunResult bad = run("verify --nest " + bad_path + " " + graph_path);
  CHECK(bad.code == 1);
  const Json verdict = Json::parse(bad.out);
  CHECK(verdict["ok"] == false);
  CHECK_FALSE(verdict["message"].get<std::string>().empty());

  tampered = Json::parse(fn.out);
  tampered["s"] = 1;
  const std::string wrong_s = write_file("v_wrong_s.json", tampered.dump());
  RunResult mism = run("verify --nest " + wrong_s + " " + graph_path);
  CHECK(mism.code == 1);
  CHECK(Json::parse(mism.out)["message"] == "stored s disagrees with the cycles");
}

TEST_CASE("exit codes separate usage errors from verified negatives") {
  CHECK(run("no-such-command").code == 2);
  CHECK(run("find-nest").code == 2);  // missing --k
  CHECK(run("find-nest --k 2 /does/not/exist.json").code == 2);

  const std::string garbage = write_file("garbage.json", "{\"n\": \"what\"}");
  RunResult r = run("find-nest --k 2 " + garbage);
  CHECK(r.code == 2);
  CHECK(Json::parse(r.out)["code"] == "bad_input");
}

TEST_CASE("planarize flags non-generic drawings with exit 1") {
  // two parallel a-w edges whose chains recombine into adjacent base edges
  std::vector<int> origin{0, 3, 0, 3, 1, 3, 2, 3};
  std::vector<int> rot_next{2, 3, 0, 5, 4, 7, 6, 1};
  const PlaneGraph plan = PlaneGraph::from_darts(4, origin, rot_next, 0);
  const Drawing d = Drawing::from_planarization(plan, {3});
  REQUIRE_FALSE(check_generic(d).ok);

  const std::string path = write_file("nongen.json", emit_drawing(d));
  RunResult r = run("planarize " + path);
  CHECK(r.code == 1);
  const Json j = Json::parse(r.out);
  CHECK(j["ok"] == false);
  CHECK(j["crossing"] == 0);
  const auto reports = reports_of(r.err);
  CHECK(reports[0]["outcome"] == "not-generic");
}

TEST_CASE("planarize matches the library Euler accounting") {
  const PlaneGraph g = gens::concentric(6);
  const Drawing d = stub_crossings(g, {{3, 6}});
  const std::string path = write_file("draw6.json", emit_drawing(d));

  RunResult r = run("planarize --r 22 " + path);
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  REQUIRE(j["ok"] == true);

  const Planarization p = planarize(d);
  const EulerReport er = euler_accounting(p, 22);
  CHECK(j["euler"]["vertex_term"] == er.vertex_term);
  CHECK(j["euler"]["face_term"] == er.face_term);
  CHECK(j["euler"]["excess"] == er.excess);
  CHECK(j["euler"]["nontriangular_faces"] == er.nontriangular_faces);
  CHECK(j["euler"]["bound"] == er.bound);
  CHECK(j["euler"]["hypothesis_ok"] == er.hypothesis_ok);
  CHECK(j["euler"]["bound_ok"] == er.bound_ok);
  CHECK(j["plan"] == Json::parse(emit_graph(p.plane_graph)));
  CHECK(j["v4"] == Json(p.v4));
}

TEST_CASE("clean cuts down to the crossing-free window") {
  const PlaneGraph g = gens::concentric(6);
  const Drawing d = stub_crossings(g, {{3, 6}});
  const std::string draw_path = write_file("cl_draw.json", emit_drawing(d));

  std::vector<CycleInG> rings;
  for (int i = 0; i < 6; ++i)
    rings.push_back(CycleInG::from_vertices(d.plan(), {3 * i, 3 * i + 1, 3 * i + 2}));
  const std::string nest_path =
      write_file("cl_nest.json", emit_nest(make_nest(d.plan(), rings), true));

  RunResult r = run("clean --k 1 --t 3 --nest " + nest_path + " " + draw_path);
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["cycles"] == Json::parse("[[6,7,8],[9,10,11],[12,13,14]]"));

  // one ring short of the pigeonhole count, with the only gap crossed
  const PlaneGraph g2 = gens::concentric(2);
  const Drawing d2 = stub_crossings(g2, {{0, 3}});
  const std::string draw2 = write_file("cl_draw2.json", emit_drawing(d2));
  std::vector<CycleInG> rings2;
  for (int i = 0; i < 2; ++i)
    rings2.push_back(CycleInG::from_vertices(d2.plan(), {3 * i, 3 * i + 1, 3 * i + 2}));
  const std::string nest2 =
      write_file("cl_nest2.json", emit_nest(make_nest(d2.plan(), rings2), true));
  RunResult small = run("clean --k 1 --t 2 --nest " + nest2 + " " + draw2);
  CHECK(small.code == 1);
  CHECK(Json::parse(small.out)["code"] == "nest_too_small");
}

TEST_CASE("bridges output matches the library report") {
  const PlaneGraph g = gens::bipyramid(6);
  const auto meridians = gens::bipyramid_meridians(g, 6);
  REQUIRE(meridians.size() >= 2);
  const CycleInG& outer = meridians.front();
  const CycleInG& inner = meridians.back();

  NestFile nf;
  nf.s = 2;
  nf.x_set = {6, 7};
  nf.cycles = {outer.vertices(), inner.vertices()};
  nf.guaranteed = true;
  const std::string nest_path = write_file("br_nest.json", emit_nest(nf));
  const std::string graph_path = write_file("br_graph.json", emit_graph(g));

  RunResult r = run("bridges --nest " + nest_path + " " + graph_path);
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);

  // the file round trip renumbers edges, so compare on the parsed graph
  const PlaneGraph gp = parse_graph(emit_graph(g));
  const BridgeReport br =
      bridge_report(gp, CycleInG::from_vertices(gp, outer.vertices()),
                    CycleInG::from_vertices(gp, inner.vertices()), {6, 7});
  CHECK(j["omega_face"] == br.omega_face);
  CHECK(j["omega_defaulted"] == br.omega_defaulted);
  CHECK(j["p2"] == Json(br.p2));
  CHECK(j["p4"] == Json(br.p4));
  CHECK(j["d1"] == br.d1);
  CHECK(j["d2"] == br.d2);
  CHECK(j["d"] == br.d);
  CHECK(j["bridges"].size() == br.bridges.size());
  for (std::size_t i = 0; i < br.bridges.size(); ++i) {
    CHECK(j["bridges"][i]["attachments"] == Json(br.bridges[i].attachments));
    CHECK(j["bridges"][i]["interior"] == br.bridges[i].interior);
    CHECK(j["bridges"][i]["singular"] == br.bridges[i].singular);
  }
}

TEST_CASE("oracle honors the cap flag and the environment variable") {
  const PlaneGraph g = gens::concentric(2);
  const std::string path = write_file("or_c2.json", emit_graph(g));

  RunResult ok = run("oracle --s 0 " + path);
  REQUIRE(ok.code == 0);
  CHECK(Json::parse(ok.out)["size"] ==
        oracle::max_nest(g, 0).cycles.size());

  CHECK(run("oracle --s 0 --max-oracle-vertices 5 " + path).code == 2);
  RunResult env = run("oracle --s 0 " + path, "NESTKIT_MAX_ORACLE=5");
  CHECK(env.code == 2);
  CHECK(Json::parse(env.out)["code"] == "too_large");
  // the flag wins over the environment
  CHECK(run("oracle --s 0 --max-oracle-vertices 10 " + path, "NESTKIT_MAX_ORACLE=5").code == 0);
}

TEST_CASE("batch mode keeps input order and isolates bad inputs") {
  const std::string a = write_file("b_c3.json", emit_graph(gens::concentric(3)));
  const std::string b = write_file("b_c4.json", emit_graph(gens::concentric(4)));
  const std::string c = write_file("b_c5.json", emit_graph(gens::concentric(5)));
  const std::string files = a + " " + b + " " + c;

  RunResult serial = run("find-nest --k 2 " + files);
  RunResult parallel = run("find-nest --k 2 --jobs 3 " + files);
  REQUIRE(serial.code == 0);
  REQUIRE(parallel.code == 0);
  CHECK(serial.out == parallel.out);
  CHECK(reports_of(serial.err) == reports_of(parallel.err));
  CHECK(reports_of(serial.err).size() == 3);

  const std::string broken = write_file("b_broken.json", "[not json");
  RunResult mixed = run("find-nest --k 2 --jobs 2 " + a + " " + broken + " " + c);
  CHECK(mixed.code == 2);
  std::istringstream lines(mixed.out);
  std::string l1, l2, l3;
  std::getline(lines, l1);
  std::getline(lines, l2);
  std::getline(lines, l3);
  CHECK(Json::parse(l1)["guaranteed"] == true);
  CHECK(Json::parse(l2).contains("error"));
  CHECK(Json::parse(l3)["guaranteed"] == true);
  const auto reps = reports_of(mixed.err);
  CHECK(reps[1]["outcome"] == "bad_input");
}

TEST_CASE("render output is deterministic and format json wraps it") {
  const std::string graph_path = write_file("r_c4.json", emit_graph(gens::concentric(4)));
  RunResult fn = run("find-nest --k 4 " + graph_path);
  const std::string nest_path = write_file("r_nest.json", fn.out);

  RunResult first = run("render --nest " + nest_path + " " + graph_path);
  RunResult second = run("render --nest " + nest_path + " " + graph_path);
  REQUIRE(first.code == 0);
  CHECK(first.out == second.out);
  CHECK(first.out.rfind("<svg ", 0) == 0);
  std::size_t polys = 0;
  for (std::size_t at = 0; (at = first.out.find("<polygon", at)) != std::string::npos; ++at)
    ++polys;
  CHECK(polys == 4);

  RunResult wrapped = run("render --format json --nest " + nest_path + " " + graph_path);
  REQUIRE(wrapped.code == 0);
  CHECK(Json::parse(wrapped.out)["svg"] == first.out);
}

TEST_CASE("reports differ only in timing across identical runs") {
  const std::string path = write_file("rep_c4.json", emit_graph(gens::concentric(4)));
  RunResult one = run("decompose --k 1 " + path);
  RunResult two = run("decompose --k 1 " + path);
  REQUIRE(one.code == 0);
  CHECK(one.out == two.out);
  CHECK(reports_of(one.err) == reports_of(two.err));
}

TEST_CASE("decompose output reconstructs into a validated result") {
  const PlaneGraph g = gens::random_triangulation(60, 7);
  const std::string path = write_file("d_r60.json", emit_graph(g));
  RunResult r = run("decompose --k 1 " + path);
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);

  if (j["outcome"] == "decomposition") {
    CHECK(j["width"].get<int>() <= 11);
    StandardTreeDecomposition d;
    const auto parents = j["parents"].get<std::vector<int>>();
    const auto bags = j["bags"].get<std::vector<std::vector<int>>>();
    const auto rings = j["rings"];
    d.nodes.resize(parents.size());
    for (std::size_t t = 0; t < parents.size(); ++t) {
      d.nodes[t].parent = parents[t];
      d.nodes[t].bag = bags[t];
      if (parents[t] >= 0) d.nodes[parents[t]].children.push_back(static_cast<int>(t));
      if (!rings[t].is_null())
        d.nodes[t].ring = CycleInG::from_vertices(g, rings[t].get<std::vector<int>>());
    }
    CHECK(validate_decomposition(g, d, true).ok);
    CHECK(d.width() == j["width"].get<int>());
  } else {
    REQUIRE(j["outcome"] == "nest");
    NestFile nf = parse_nest(r.out);
    CHECK(realize_nest(g, nf).size() >= 1);
  }
}
