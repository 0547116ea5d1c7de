#include "nestkit/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "nestkit/decomp.hpp"
#include "nestkit/drawing.hpp"
#include "nestkit/gens.hpp"
#include "nestkit/json_io.hpp"
#include "nestkit/nest.hpp"
#include "nestkit/oracle.hpp"
#include "nestkit/render.hpp"
#include "nestkit/report.hpp"

namespace nestkit {
namespace {

using Json = nlohmann::ordered_json;

// Violations the tool established, as opposed to inputs it could not use.
int exit_code_for(Errc c) {
  switch (c) {
    case Errc::nest_too_small:
    case Errc::identity_violated:
      return 1;
    default:
      return 2;
  }
}

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::bad_input: return "bad_input";
    case Errc::euler_violation: return "euler_violation";
    case Errc::disconnected: return "disconnected";
    case Errc::not_a_cycle: return "not_a_cycle";
    case Errc::cycle_not_simple: return "cycle_not_simple";
    case Errc::vertex_not_on_cycle: return "vertex_not_on_cycle";
    case Errc::not_a_triangulation: return "not_a_triangulation";
    case Errc::internal_invariant_broken: return "internal_invariant_broken";
    case Errc::mesh_degenerate: return "mesh_degenerate";
    case Errc::insufficient_interior_arcs: return "insufficient_interior_arcs";
    case Errc::inconsistent_ledger: return "inconsistent_ledger";
    case Errc::identity_violated: return "identity_violated";
    case Errc::nest_too_small: return "nest_too_small";
    case Errc::too_large: return "too_large";
    case Errc::layout_degenerate: return "layout_degenerate";
  }
  return "unknown";
}

struct Unit {
  std::string out;  // one stdout document, newline terminated
  std::string outcome = "ok";
  std::vector<std::pair<std::string, long long>> metrics;
  std::optional<bool> guaranteed;
  double elapsed_ms = 0.0;
  int code = 0;
};

using Work = std::function<Unit(const std::string& bytes)>;

Unit guarded(const Work& work, const std::string& bytes) {
  const auto t0 = std::chrono::steady_clock::now();
  Unit u;
  try {
    u = work(bytes);
  } catch (const Error& e) {
    Json j;
    j["error"] = e.what();
    j["code"] = errc_name(e.code());
    u = Unit{};
    u.out = j.dump() + "\n";
    u.outcome = errc_name(e.code());
    u.code = exit_code_for(e.code());
  } catch (const std::exception& e) {
    Json j;
    j["error"] = e.what();
    u = Unit{};
    u.out = j.dump() + "\n";
    u.outcome = "error";
    u.code = 2;
  }
  u.elapsed_ms = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
  return u;
}

std::string slurp(std::istream& is) {
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::string read_input(const std::string& path) {
  if (path == "-") return slurp(std::cin);
  std::ifstream f(path, std::ios::binary);
  expect(bool(f), Errc::bad_input, "cannot open " + path);
  return slurp(f);
}

// Runs one work item per input, in parallel when asked, and prints results
// in input order so batch output is deterministic.
int run_units(const std::string& command, std::vector<std::string> files, int jobs,
              const Work& work) {
  if (files.empty()) files.push_back("-");
  const int count = static_cast<int>(files.size());
  std::vector<Unit> units(count);

  std::vector<std::string> bytes(count);
  std::vector<char> readable(count, 1);
  for (int i = 0; i < count; ++i) {
    try {
      bytes[i] = read_input(files[i]);
    } catch (const Error& e) {
      readable[i] = 0;
      Json j;
      j["error"] = e.what();
      units[i].out = j.dump() + "\n";
      units[i].outcome = "unreadable";
      units[i].code = 2;
    }
  }

  auto run_one = [&](int i) {
    if (readable[i]) units[i] = guarded(work, bytes[i]);
  };
  if (jobs <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) run_one(i);
  } else {
    std::atomic<int> next{0};
    auto worker = [&] {
      for (int i; (i = next.fetch_add(1)) < count;) run_one(i);
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min(jobs, count); ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  int code = 0;
  for (int i = 0; i < count; ++i) {
    std::cout << units[i].out;
    RunReport rep;
    rep.command = command;
    rep.input_digest = digest_hex(readable[i] ? bytes[i] : files[i]);
    rep.outcome = units[i].outcome;
    rep.metrics = units[i].metrics;
    rep.guaranteed = units[i].guaranteed;
    rep.elapsed_ms = units[i].elapsed_ms;
    std::cerr << rep.to_json() << "\n";
    code = std::max(code, units[i].code);
  }
  std::cout.flush();
  return code;
}

// One-shot commands that consume flags instead of input files.
int run_direct(const std::string& command, const std::string& descriptor, const Work& work) {
  Unit u = guarded(work, descriptor);
  std::cout << u.out;
  std::cout.flush();
  RunReport rep;
  rep.command = command;
  rep.input_digest = digest_hex(descriptor);
  rep.outcome = u.outcome;
  rep.metrics = u.metrics;
  rep.guaranteed = u.guaranteed;
  rep.elapsed_ms = u.elapsed_ms;
  std::cerr << rep.to_json() << "\n";
  return u.code;
}

Json nest_file_json(const Nest& nest, bool guaranteed) {
  return Json::parse(emit_nest(nest, guaranteed));
}

PlaneGraph make_family(std::string family, const std::vector<int>& params,
                       std::uint64_t seed) {
  std::replace(family.begin(), family.end(), '_', '-');
  auto want = [&](std::size_t k, const char* names) {
    expect(params.size() == k, Errc::bad_input,
           "family " + family + " takes parameters: " + names);
  };
  if (family == "concentric") {
    want(1, "rings");
    return gens::concentric(params[0]);
  }
  if (family == "one-nest") {
    want(1, "layers");
    return gens::one_nest(params[0]);
  }
  if (family == "bipyramid") {
    want(1, "equator");
    return gens::bipyramid(params[0]);
  }
  if (family == "grid") {
    want(2, "width height");
    return gens::grid_triangulation(params[0], params[1]);
  }
  if (family == "apollonian") {
    want(1, "rounds");
    return gens::apollonian(params[0], seed);
  }
  if (family == "random") {
    want(1, "vertices");
    return gens::random_triangulation(params[0], seed);
  }
  fail(Errc::bad_input,
       "unknown family " + family +
           " (expected concentric | one-nest | bipyramid | grid | apollonian | random)");
}

NestFile read_nest_file(const std::string& path) { return parse_nest(read_input(path)); }

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"nested-cycle toolkit for plane triangulations and drawings"};
  app.require_subcommand(1);
  app.fallthrough();

  int jobs = 1;
  app.add_option("--jobs", jobs, "process inputs in parallel")->check(CLI::PositiveNumber);
  int max_oracle = -1;
  app.add_option("--max-oracle-vertices", max_oracle,
                 "vertex cap for exhaustive search (overrides NESTKIT_MAX_ORACLE)");

  std::vector<std::string> files;
  const char* files_help = "input files, '-' or nothing for stdin";

  auto* gen = app.add_subcommand("gen", "generate a fixture graph");
  std::string family;
  std::vector<int> params;
  std::uint64_t seed = 0;
  gen->add_option("family", family, "concentric | one-nest | bipyramid | grid | apollonian | random")
      ->required();
  gen->add_option("params", params, "family parameters");
  gen->add_option("--seed", seed, "PRNG seed, default 0");

  auto* find = app.add_subcommand("find-nest", "find a large nest in a triangulation");
  int k = 0;
  find->add_option("--k", k, "requested nest size")->required();
  find->add_option("inputs", files, files_help);

  auto* dec = app.add_subcommand("decompose", "tree decomposition or direct 0-nest");
  dec->add_option("--k", k, "target parameter")->required();
  dec->add_option("inputs", files, files_help);

  auto* ver = app.add_subcommand("verify", "re-verify a stored nest against its graph");
  std::string nest_path;
  ver->add_option("--nest", nest_path, "nest file")->required();
  ver->add_option("inputs", files, files_help);

  auto* pla = app.add_subcommand("planarize", "flatten a drawing and run Euler accounting");
  long long r = 0;
  pla->add_option("--r", r, "allowed degree surplus");
  pla->add_option("inputs", files, files_help);

  auto* cle = app.add_subcommand("clean", "cut a nest to a crossing-free window");
  int t = 0;
  cle->add_option("--k", k, "crossing budget")->required();
  cle->add_option("--t", t, "window size")->required();
  cle->add_option("--nest", nest_path, "nest file over the drawing's base graph")->required();
  cle->add_option("inputs", files, files_help);

  auto* bri = app.add_subcommand("bridges", "classify bridges of two nested cycles");
  int omega = -1;
  bri->add_option("--nest", nest_path, "nest file with the two cycles, outermost first")
      ->required();
  bri->add_option("--omega", omega, "face id inside the lens to use as omega");
  bri->add_option("inputs", files, files_help);

  auto* ora = app.add_subcommand("oracle", "exhaustive maximum nest on a small graph");
  int s = 0;
  ora->add_option("--s", s, "shared vertex count")->required()->check(CLI::Range(0, 2));
  ora->add_option("inputs", files, files_help);

  auto* ren = app.add_subcommand("render", "straight-line SVG of a graph");
  std::string format = "svg";
  std::string ren_nest_path;
  ren->add_option("--nest", ren_nest_path, "nest file to highlight");
  ren->add_option("--format", format, "svg | json")->check(CLI::IsMember({"svg", "json"}));
  ren->add_option("inputs", files, files_help);

  auto* bud = app.add_subcommand("budget", "parameter budget for given k and r");
  bud->add_option("--k", k, "criticality parameter")->required();
  bud->add_option("--r", r, "degree surplus, default 0");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (max_oracle > 0) setenv("NESTKIT_MAX_ORACLE", std::to_string(max_oracle).c_str(), 1);

  try {
    if (*gen) {
      std::string desc = "gen " + family;
      for (int p : params) desc += " " + std::to_string(p);
      desc += " seed=" + std::to_string(seed);
      return run_direct("gen", desc, [&](const std::string&) {
        const PlaneGraph g = make_family(family, params, seed);
        Unit u;
        u.out = emit_graph(g) + "\n";
        u.metrics = {{"n", g.n()}, {"edges", g.edge_count()}, {"faces", g.face_count()}};
        return u;
      });
    }

    if (*bud) {
      const std::string desc =
          "budget k=" + std::to_string(k) + " r=" + std::to_string(r);
      return run_direct("budget", desc, [&](const std::string&) {
        const ParameterBudget b = parameter_budget(k, r);
        Json j;
        if (b.l.integral())
          j["l"] = b.l.num / 2;
        else
          j["l"] = b.l.value();
        j["t"] = b.t;
        j["t_prime"] = b.t_prime;
        j["clean_input"] = b.clean_input;
        Unit u;
        u.out = j.dump() + "\n";
        u.metrics = {{"t", b.t}, {"t_prime", b.t_prime}, {"clean_input", b.clean_input}};
        return u;
      });
    }

    if (*find)
      return run_units("find-nest", files, jobs, [&](const std::string& bytes) {
        const PlaneGraph g = parse_graph(bytes);
        const FoundNest fn = find_nest(g, k);
        Unit u;
        u.out = emit_nest(fn.nest, fn.guaranteed) + "\n";
        u.outcome = "nest";
        u.metrics = {{"n", g.n()}, {"size", fn.nest.size()}, {"s", fn.nest.s}};
        u.guaranteed = fn.guaranteed;
        return u;
      });

    if (*dec)
      return run_units("decompose", files, jobs, [&](const std::string& bytes) {
        const PlaneGraph g = parse_graph(bytes);
        const DecompOutcome oc = refine(g, k);
        Unit u;
        Json j;
        if (oc.zero_nest) {
          j["outcome"] = "nest";
          Json body = nest_file_json(*oc.zero_nest, true);
          for (auto& [key, value] : body.items()) j[key] = value;
          u.outcome = "nest";
          u.metrics = {{"n", g.n()}, {"size", oc.zero_nest->size()}};
          u.guaranteed = true;
        } else {
          const StandardTreeDecomposition& d = *oc.decomposition;
          j["outcome"] = "decomposition";
          j["width"] = d.width();
          Json parents = Json::array(), bags = Json::array(), rings = Json::array();
          for (const DecompNode& node : d.nodes) {
            parents.push_back(node.parent);
            bags.push_back(node.bag);
            if (node.ring)
              rings.push_back(node.ring->vertices());
            else
              rings.push_back(nullptr);
          }
          j["parents"] = std::move(parents);
          j["bags"] = std::move(bags);
          j["rings"] = std::move(rings);
          u.outcome = "decomposition";
          u.metrics = {{"n", g.n()},
                       {"width", d.width()},
                       {"nodes", static_cast<long long>(d.nodes.size())}};
        }
        u.out = j.dump() + "\n";
        return u;
      });

    if (*ver) {
      const NestFile nf = read_nest_file(nest_path);
      return run_units("verify", files, jobs, [&, nf](const std::string& bytes) {
        const PlaneGraph g = parse_graph(bytes);
        Unit u;
        Json j;
        bool ok = false;
        try {
          const std::vector<CycleInG> cycles = bind_cycles(g, nf.cycles);
          const NestReport rep = verify_nest(g, cycles);
          ok = rep.ok;
          std::string message = rep.message;
          std::vector<int> x = nf.x_set;
          std::sort(x.begin(), x.end());
          if (ok && rep.s != nf.s) {
            ok = false;
            message = "stored s disagrees with the cycles";
          } else if (ok && rep.x_set != x) {
            ok = false;
            message = "stored X disagrees with the cycles";
          }
          j["ok"] = ok;
          if (!ok) j["message"] = message;
          j["s"] = rep.s;
          j["X"] = rep.x_set;
        } catch (const Error& e) {
          // A stored walk that fails to bind is a verification failure, not
          // a malformed request.
          j["ok"] = false;
          j["message"] = e.what();
        }
        u.out = j.dump() + "\n";
        u.outcome = ok ? "ok" : "violation";
        u.code = ok ? 0 : 1;
        u.metrics = {{"cycles", static_cast<long long>(nf.cycles.size())}};
        return u;
      });
    }

    if (*pla)
      return run_units("planarize", files, jobs, [&](const std::string& bytes) {
        const Drawing d = parse_drawing(bytes);
        Unit u;
        const GenericReport gr = check_generic(d);
        if (!gr.ok) {
          Json j;
          j["ok"] = false;
          j["crossing"] = gr.crossing;
          j["message"] = gr.message;
          u.out = j.dump() + "\n";
          u.outcome = "not-generic";
          u.code = 1;
          return u;
        }
        const Planarization p = planarize(d);
        const EulerReport er = euler_accounting(p, r);
        Json j;
        j["ok"] = true;
        j["plan"] = Json::parse(emit_graph(p.plane_graph));
        j["v4"] = p.v4;
        Json euler;
        euler["vertex_term"] = er.vertex_term;
        euler["face_term"] = er.face_term;
        euler["excess"] = er.excess;
        euler["nontriangular_faces"] = er.nontriangular_faces;
        euler["bound"] = er.bound;
        euler["hypothesis_ok"] = er.hypothesis_ok;
        euler["bound_ok"] = er.bound_ok;
        j["euler"] = std::move(euler);
        u.out = j.dump() + "\n";
        u.metrics = {{"n", d.plan().n()},
                     {"crossings", static_cast<long long>(d.crossings().size())},
                     {"excess", er.excess}};
        return u;
      });

    if (*cle) {
      const NestFile nf = read_nest_file(nest_path);
      return run_units("clean", files, jobs, [&, nf](const std::string& bytes) {
        const Drawing d = parse_drawing(bytes);
        const Nest nest = realize_nest(d.plan(), nf);
        const Nest cleaned = clean_subnest(d, nest, k, t);
        Unit u;
        u.out = emit_nest(cleaned, nf.guaranteed) + "\n";
        u.outcome = "clean";
        u.metrics = {{"size", cleaned.size()},
                     {"crossings", static_cast<long long>(d.crossings().size())}};
        u.guaranteed = nf.guaranteed;
        return u;
      });
    }

    if (*bri) {
      const NestFile nf = read_nest_file(nest_path);
      std::optional<int> omega_face;
      if (bri->count("--omega")) omega_face = omega;
      return run_units("bridges", files, jobs, [&, nf](const std::string& bytes) {
        const PlaneGraph g = parse_graph(bytes);
        expect(nf.cycles.size() == 2, Errc::bad_input,
               "bridge report needs exactly two cycles, outermost first");
        const CycleInG outer = CycleInG::from_vertices(g, nf.cycles[0]);
        const CycleInG inner = CycleInG::from_vertices(g, nf.cycles[1]);
        std::vector<int> x = nf.x_set;
        std::sort(x.begin(), x.end());
        const BridgeReport br = bridge_report(g, outer, inner, x, omega_face);
        Json j;
        j["omega_face"] = br.omega_face;
        j["omega_defaulted"] = br.omega_defaulted;
        j["p2"] = br.p2;
        j["p4"] = br.p4;
        j["d1"] = br.d1;
        j["d2"] = br.d2;
        j["f1_cut"] = br.f1_cut;
        j["d"] = br.d;
        j["f_cut"] = br.f_cut;
        Json bridges = Json::array();
        for (const HBridge& b : br.bridges) {
          Json rec;
          rec["vertices"] = b.vertices;
          rec["attachments"] = b.attachments;
          rec["edges"] = b.edges;
          rec["interior"] = b.interior;
          rec["singular"] = b.singular;
          bridges.push_back(std::move(rec));
        }
        j["bridges"] = std::move(bridges);
        Unit u;
        u.out = j.dump() + "\n";
        u.metrics = {{"bridges", static_cast<long long>(br.bridges.size())},
                     {"d1", br.d1},
                     {"d2", br.d2},
                     {"d", br.d}};
        return u;
      });
    }

    if (*ora)
      return run_units("oracle", files, jobs, [&](const std::string& bytes) {
        const PlaneGraph g = parse_graph(bytes);
        const oracle::NestWitness w = oracle::max_nest(g, s);
        Json j;
        j["size"] = w.cycles.size();
        j["s"] = s;
        j["X"] = w.x_set;
        j["cycles"] = w.cycles;
        Unit u;
        u.out = j.dump() + "\n";
        u.metrics = {{"n", g.n()}, {"size", static_cast<long long>(w.cycles.size())}};
        return u;
      });

    if (*ren) {
      std::optional<NestFile> nf;
      if (!ren_nest_path.empty()) nf = read_nest_file(ren_nest_path);
      return run_units("render", files, jobs, [&, nf](const std::string& bytes) {
        const PlaneGraph g = parse_graph(bytes);
        const std::string svg = render_svg(g, nf ? nf->cycles
                                                 : std::vector<std::vector<int>>{});
        Unit u;
        if (format == "json") {
          Json j;
          j["svg"] = svg;
          u.out = j.dump() + "\n";
        } else {
          u.out = svg;
        }
        u.metrics = {{"n", g.n()},
                     {"edges", g.edge_count()},
                     {"highlights", nf ? static_cast<long long>(nf->cycles.size()) : 0}};
        return u;
      });
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace nestkit
