// adjointkit: exact-arithmetic toolkit for multigraded adjoint rings on
// numerical surface models. Every subcommand reads JSON, writes JSON, and
// re-verifies its own output; rationals travel as "p/q" strings. Exit codes:
// 0 computed and verified, 1 a verification failed, 2 bad input.

#include "adjointkit/json_io.hpp"
#include "adjointkit/linalg.hpp"
#include "adjointkit/pipeline.hpp"
#include "adjointkit/simplex_cover.hpp"
#include "adjointkit/surface.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

namespace {

using namespace adjointkit;

json read_input(const std::string& path) {
  if (path == "-") return json::parse(std::cin);
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  return json::parse(in);
}

void write_output(const json& j, const std::string& out_path) {
  std::string text = j.dump();
  text += '\n';
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
  out << text;
}

const json& pick(const json& j, const char* name, const char* alias) {
  if (j.is_object() && j.contains(name)) return j.at(name);
  if (j.is_object() && j.contains(alias)) return j.at(alias);
  throw std::invalid_argument(std::string("input: missing field '") + name + "'");
}

// Uniform integer in [lo, hi] by rejection, so the stream of draws is the
// same on every platform for a given seed.
long long bounded(std::mt19937_64& rng, long long lo, long long hi) {
  unsigned long long span = static_cast<unsigned long long>(hi - lo + 1);
  unsigned long long limit = ~0ULL - (~0ULL % span);
  unsigned long long x;
  do {
    x = rng();
  } while (x >= limit);
  return lo + static_cast<long long>(x % span);
}

std::vector<ZVec> lattice_points(const Polytope& p) {
  std::vector<ZVec> out;
  if (p.empty()) return out;
  int d = p.ambient();
  const QMat& vs = p.vertices();
  std::vector<long long> lo(d), hi(d);
  for (int c = 0; c < d; ++c) {
    Rat mn = vs[0][c], mx = vs[0][c];
    for (const QVec& v : vs) {
      if (v[c] < mn) mn = v[c];
      if (mx < v[c]) mx = v[c];
    }
    lo[c] = mn.ceil().get_si();
    hi[c] = mx.floor().get_si();
    if (lo[c] > hi[c]) return out;
  }
  ZVec z(lo.begin(), lo.end());
  while (true) {
    QVec x;
    for (long long v : z) x.push_back(Rat(v));
    if (p.contains(x)) out.push_back(z);
    int c = 0;
    while (c < d && z[c] == hi[c]) {
      z[c] = lo[c];
      ++c;
    }
    if (c == d) break;
    ++z[c];
  }
  return out;
}

int run_cover(const json& in, const std::string& out_path) {
  Polytope c = polytope_from_json(pick(in, "c", "C"));
  std::vector<Polytope> parts;
  for (const json& pj : pick(in, "parts", "D")) parts.push_back(polytope_from_json(pj));
  SimplexCover cover = cover_respecting(c, parts);
  std::optional<std::string> err = verify_cover(c, parts, cover);
  json report{{"ok", !err.has_value()}};
  if (err) report["note"] = *err;
  write_output({{"cover", to_json(cover)}, {"report", report}}, out_path);
  return err ? 1 : 0;
}

int run_zariski(const json& in, const std::string& out_path) {
  NumericalSurface s = surface_from_json(pick(in, "surface", "surface"));
  QVec d = qvec_from_json(pick(in, "divisor", "d"));
  std::vector<int> order;
  if (in.contains("order"))
    for (const json& x : in.at("order")) order.push_back(x.get<int>());
  ZariskiResult z = zariski(s, d, order);
  if (z.support.empty()) {
    std::cerr << "zariski: divisor is already nef\n";
  } else {
    std::cerr << "zariski: negative part supported on " << z.support.size() << " classes\n";
    for (size_t i = 0; i < z.support.size(); ++i)
      std::cerr << "  " << s.curves[z.support[i]] << " with multiplicity " << z.nu[i].str()
                << "\n";
  }
  write_output(to_json(z), out_path);
  return 0;
}

int run_mmp(const json& in, const std::string& out_path) {
  NumericalSurface s = surface_from_json(pick(in, "surface", "surface"));
  QVec delta = qvec_from_json(pick(in, "delta", "boundary"));
  MMPResult res = ::adjointkit::run_mmp(s, delta);
  for (size_t i = 0; i < res.steps.size(); ++i)
    std::cerr << "step " << (i + 1) << ": contract " << s.curves[res.steps[i].orig]
              << " (current index " << res.steps[i].index << ")\n";
  std::cerr << "outcome: " << res.outcome << " with " << res.final_surface.r
            << " tracked classes\n";
  write_output(to_json(res), out_path);
  return 0;
}

int run_region(const json& in, const std::string& out_path, unsigned long long seed) {
  NumericalSurface s = surface_from_json(pick(in, "surface", "surface"));
  QMat deltas = qmat_from_json(pick(in, "boundaries", "deltas"));
  int n = static_cast<int>(deltas.size());
  if (n < 2) throw std::invalid_argument("region: need at least two boundary rows");
  int cdim = n - 1;
  Polytope chart;
  if (in.contains("chart")) {
    chart = polytope_from_json(in.at("chart"));
  } else {
    QMat corners;
    for (int i = 0; i < cdim; ++i) {
      QVec e(cdim, Rat(0));
      e[i] = Rat(1);
      corners.push_back(e);
    }
    corners.push_back(QVec(cdim, Rat(0)));
    chart = convex_hull(cdim, corners);
  }
  Polytope region = pseff_region(s, deltas, chart);
  std::vector<Chamber> chambers = wlc_decomposition(s, deltas, chart);

  // Spot-check the region against the direct cone test on a seeded random
  // rational grid; the computation above is deterministic, only this
  // sampling consumes the seed.
  QVec base = vadd(s.k, deltas[n - 1]);
  QMat cols;
  for (int i = 0; i < cdim; ++i) cols.push_back(vsub(deltas[i], deltas[n - 1]));
  std::mt19937_64 rng(seed);
  const QMat& cv = chart.vertices();
  QVec lo(cdim, Rat(0)), hi(cdim, Rat(0));
  for (int c = 0; c < cdim && !chart.empty(); ++c) {
    lo[c] = cv[0][c];
    hi[c] = cv[0][c];
    for (const QVec& v : cv) {
      if (v[c] < lo[c]) lo[c] = v[c];
      if (hi[c] < v[c]) hi[c] = v[c];
    }
  }
  int tested = 0, disagreements = 0;
  for (int draw = 0; draw < 512 && tested < 64 && !chart.empty(); ++draw) {
    QVec t(cdim);
    for (int c = 0; c < cdim; ++c) {
      long long a = (Rat(64) * lo[c]).floor().get_si();
      long long b = (Rat(64) * hi[c]).ceil().get_si();
      t[c] = Rat(bounded(rng, a, b), 64);
    }
    if (!chart.contains(t)) continue;
    ++tested;
    QVec d(base);
    for (int c = 0; c < cdim; ++c) d = vadd(d, vscale(t[c], cols[c]));
    if (region.contains(t) != is_pseff(s, d)) ++disagreements;
  }

  std::cerr << "region: "
            << (region.empty() ? std::string("empty")
                               : std::to_string(region.vertices().size()) + " vertices")
            << ", " << chambers.size() << " chambers\n";
  std::cerr << "sampling: " << tested << " points, " << disagreements << " disagreements\n";

  json chs = json::array();
  for (const Chamber& ch : chambers) chs.push_back(to_json(ch));
  write_output({{"region", to_json(region)},
                {"chambers", chs},
                {"sampling", {{"tested", tested}, {"disagreements", disagreements}}}},
               out_path);
  return disagreements == 0 ? 0 : 1;
}

int run_genring(const json& in, const std::string& out_path, long long bound) {
  if (in.contains("polygons")) {
    std::vector<QMat> polys;
    for (const json& pj : in.at("polygons")) polys.push_back(qmat_from_json(pj));
    for (const QMat& p : polys)
      if (p.empty()) throw std::invalid_argument("genring: empty polygon");
    GeneratorSet gens = semiample_generators(polys);

    // Independent oracle: the degree-m slice is the set of lattice points of
    // the weighted Minkowski sum, enumerated from scratch.
    int n = gens.n, k = gens.k;
    std::vector<MonoidElem> slice;
    ZVec m(n, 0);
    while (true) {
      if (total_deg(m) <= bound) {
        QMat sums;
        std::vector<size_t> idx(n, 0);
        while (true) {
          QVec pt(k, Rat(0));
          for (int i = 0; i < n; ++i)
            pt = vadd(pt, vscale(Rat(m[i]), polys[i][idx[i]]));
          sums.push_back(pt);
          int c = 0;
          while (c < n && idx[c] + 1 == polys[c].size()) {
            idx[c] = 0;
            ++c;
          }
          if (c == n) break;
          ++idx[c];
        }
        for (const ZVec& u : lattice_points(convex_hull(k, sums))) slice.push_back({m, u});
      }
      int c = 0;
      while (c < n && m[c] == bound) {
        m[c] = 0;
        ++c;
      }
      if (c == n) break;
      ++m[c];
    }
    std::sort(slice.begin(), slice.end());
    slice.erase(std::unique(slice.begin(), slice.end()), slice.end());

    std::vector<MonoidElem> flat;
    for (const GenEntry& g : gens.elems)
      if (total_deg(g.elem.deg) <= bound) flat.push_back(g.elem);
    GenerationReport rep = is_generated_up_to(slice, flat, bound);
    std::cerr << "genring: " << gens.elems.size() << " generators, verification "
              << (rep.ok ? "passed" : "failed") << " at bound " << bound << "\n";
    write_output({{"generators", to_json(gens)}, {"report", to_json(rep)}}, out_path);
    return rep.ok ? 0 : 1;
  }

  GradedMonoid target = monoid_from_json(pick(in, "target", "target"));
  std::vector<GeneratorSet> rings;
  for (const json& rj : pick(in, "rings", "rings")) rings.push_back(genset_from_json(rj));
  std::vector<TransferMatrices> mats;
  for (const json& tj : pick(in, "transfers", "transfers"))
    mats.push_back(transfer_from_json(tj));
  auto slice = [&target](long long b) { return elements_up_to(target, b); };
  ExtensionReport rep = simplex_transfer(rings, mats, slice, target.n, target.k, bound);
  std::cerr << "genring: transfer " << (rep.ok ? "succeeded" : "failed") << " with "
            << rep.gens.elems.size() << " generators\n";
  write_output(to_json(rep), out_path);
  return rep.ok ? 0 : 1;
}

int run_pipeline_cmd(const json& in, const std::string& out_path, long long bound,
                     const std::string& trace_path) {
  AdjointInstance inst = instance_from_json(in);
  std::ofstream trace_file;
  TraceFn trace = nullptr;
  if (!trace_path.empty()) {
    trace_file.open(trace_path, std::ios::app);
    if (!trace_file) throw std::invalid_argument("cannot open trace file: " + trace_path);
    trace = [&trace_file](const std::string& line) { trace_file << line << "\n" << std::flush; };
  }
  PipelineResult res = run_pipeline(inst, bound, trace);
  write_output(to_json(res), out_path);
  return res.verified ? 0 : 1;
}

int run_verify(const std::string& out_path, const std::string& trace_path) {
  if (trace_path.empty()) throw std::invalid_argument("verify: --trace FILE is required");
  std::ifstream in(trace_path);
  if (!in) throw std::invalid_argument("cannot open trace file: " + trace_path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) lines.push_back(line);
  TraceCheck check = verify_trace(lines);
  std::cerr << "verify: " << lines.size() << " recorded steps, "
            << (check.ok ? "all pass" : "FAILED") << "\n";
  write_output(to_json(check), out_path);
  return check.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact toolkit for multigraded adjoint rings on surface models"};
  app.require_subcommand(1);

  std::string input = "-";
  std::string out_path;
  std::string trace_path;
  long long bound = 8;
  unsigned long long seed = 0;

  auto add_common = [&](CLI::App* sub, bool with_input) {
    if (with_input) sub->add_option("input", input, "input JSON file, '-' for stdin");
    sub->add_option("--out", out_path, "write the JSON result to FILE instead of stdout");
    return sub;
  };

  CLI::App* cover = add_common(app.add_subcommand("cover", "aligned simplicial cover of a polytope"), true);
  CLI::App* zar = add_common(app.add_subcommand("zariski", "Zariski decomposition of a divisor"), true);
  CLI::App* mmp = add_common(app.add_subcommand("mmp", "adjoint minimal model program"), true);
  CLI::App* region = add_common(app.add_subcommand("region", "pseudoeffective region and chamber decomposition"), true);
  region->add_option("--seed", seed, "seed for the randomized verification sample");
  CLI::App* genring = add_common(app.add_subcommand("genring", "section-ring generators or a transfer step"), true);
  genring->add_option("--bound", bound, "verification degree bound");
  CLI::App* pipeline = add_common(app.add_subcommand("pipeline", "full adjoint-ring pipeline on an instance"), true);
  pipeline->add_option("--bound", bound, "verification degree bound");
  pipeline->add_option("--trace", trace_path, "append the JSON-lines trace to FILE");
  CLI::App* verify = add_common(app.add_subcommand("verify", "replay and check a recorded trace"), false);
  verify->add_option("--trace", trace_path, "trace file to verify")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(cover)) return run_cover(read_input(input), out_path);
    if (app.got_subcommand(zar)) return run_zariski(read_input(input), out_path);
    if (app.got_subcommand(mmp)) return run_mmp(read_input(input), out_path);
    if (app.got_subcommand(region)) return run_region(read_input(input), out_path, seed);
    if (app.got_subcommand(genring)) return run_genring(read_input(input), out_path, bound);
    if (app.got_subcommand(pipeline))
      return run_pipeline_cmd(read_input(input), out_path, bound, trace_path);
    if (app.got_subcommand(verify)) return run_verify(out_path, trace_path);
  } catch (const inconsistency_error& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return 2;
  }
  return 2;
}
