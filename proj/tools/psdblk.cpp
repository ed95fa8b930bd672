// SPDX-License-Identifier: Apache-2.0
//
// psdblk: decompose PSD block matrices, verify the norm-inequality suite,
// and run counterexample searches. JSON goes to stdout (CSV with --full),
// diagnostics to stderr. Exit codes: 0 ok, 1 usage, 2 invalid input,
// 3 violation found.
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "psdblk/checks.hpp"
#include "psdblk/decomposition.hpp"
#include "psdblk/errors.hpp"
#include "psdblk/generators.hpp"
#include "psdblk/json_io.hpp"
#include "psdblk/search.hpp"

namespace {

using namespace psdblk;

std::vector<std::pair<Index, Index>> parse_dims(const std::string& spec) {
  std::vector<std::pair<Index, Index>> out;
  std::stringstream ss(spec);
  std::string token;
  while (std::getline(ss, token, ',')) {
    size_t x = token.find('x');
    if (x == std::string::npos || x == 0 || x + 1 == token.size()) {
      throw ParseError("bad dims token '" + token + "' (want NxM)");
    }
    long n = 0, m = 0;
    auto rn = std::from_chars(token.data(), token.data() + x, n);
    auto rm = std::from_chars(token.data() + x + 1, token.data() + token.size(), m);
    if (rn.ec != std::errc{} || rn.ptr != token.data() + x || rm.ec != std::errc{} ||
        rm.ptr != token.data() + token.size() || n < 1 || m < 1 || n > 64 || m > 64) {
      throw ParseError("bad dims token '" + token + "' (want NxM, 1..64)");
    }
    out.emplace_back(n, m);
  }
  if (out.empty()) throw ParseError("dims spec is empty");
  return out;
}

void apply_env_seed(uint64_t& seed) {
  const char* env = std::getenv("PSDBLK_SEED");
  if (env == nullptr || *env == '\0') return;
  uint64_t value = 0;
  auto r = std::from_chars(env, env + std::string_view(env).size(), value);
  if (r.ec != std::errc{} || *r.ptr != '\0') {
    throw CLI::ValidationError("PSDBLK_SEED", "not an unsigned integer: " +
                                                  std::string(env));
  }
  seed = value;
}

Json read_stdin_json() {
  try {
    return Json::parse(std::cin);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("stdin is not valid JSON: ") + e.what());
  }
}

void emit(const Json& j) { std::cout << canonical_dump(j); }

int run_decompose(const std::string& mode) {
  BlockPsd M = block_psd_from_json(read_stdin_json());
  if (mode == "lemma") {
    emit(decomposition_to_json(lemma_decompose(M)));
  } else if (mode == "re") {
    emit(decomposition_to_json(congruence_decompose(M, CongruenceMode::RealPart)));
  } else if (mode == "im") {
    emit(decomposition_to_json(congruence_decompose(M, CongruenceMode::ImaginaryPart)));
  } else {  // envelope (choices restricted by CLI11)
    LownerEnvelope env = lowner_envelope(M);
    emit(Json{{"decomposition", decomposition_to_json(env.decomposition)},
              {"envelope", matrix_to_json(env.envelope)},
              {"min_gap_eigenvalue", env.min_gap_eigenvalue}});
  }
  return 0;
}

int run_check(const SuiteConfig& config) {
  SuiteReport report = run_suite(config);
  if (config.full) {
    std::cout << report.csv;
  } else {
    emit(report.to_json());
  }
  std::cerr << "checks: " << report.rows.size() << " rows, " << report.violations
            << " precondition-met violation(s)\n";
  return report.violations > 0 ? 3 : 0;
}

int run_hunt(const HuntConfig& config, const std::string& history_path,
             bool fail_on_violation) {
  SearchRecord rec = hunt(config);
  if (!history_path.empty()) {
    std::ofstream hist(history_path);
    if (!hist) throw Error("cannot open history file '" + history_path + "'");
    hist << "iteration,score\n";
    char buf[64];
    for (const HistorySample& h : rec.history) {
      std::snprintf(buf, sizeof buf, "%ld,%.17g\n", h.iteration, h.score);
      hist << buf;
    }
  }
  emit(rec.to_json());
  std::cerr << "hunt: best score " << rec.best_score << " (chain " << rec.best_chain
            << ", k = " << rec.best_k << ")\n";
  return rec.violation_found && fail_on_violation ? 3 : 0;
}

int run_probe(Index n, long restarts, uint64_t seed) {
  BlockPsd M = random_block_psd(n, n, GeneratorMode::RealEntries, seed);
  ProbeResult result = probe_real_decomposition(M, restarts, derive_seed(seed, "probe"));
  Json j = result.to_json();
  std::ostringstream dims;
  dims << n << "x" << n;
  Json inst = block_psd_to_json(M);
  inst["provenance"] = Json{{"mode", mode_name(GeneratorMode::RealEntries)},
                            {"seed", seed},
                            {"dims", dims.str()},
                            {"generator_version", kGeneratorVersion}};
  j["instance"] = std::move(inst);
  emit(j);
  std::cerr << "probe-real: min residual " << result.min_residual << " over "
            << restarts << " restart(s)\n";
  return 0;
}

int run_example() {
  Json j = block_psd_to_json(example_equality());
  j["provenance"] = Json{{"mode", "fixture/equality"},
                         {"seed", 0},
                         {"dims", "2x2"},
                         {"generator_version", kGeneratorVersion}};
  emit(j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PSD 2x2-block matrix decompositions, norm-inequality checks, "
               "and counterexample search"};
  app.require_subcommand(1);

  std::string dec_mode = "lemma";
  CLI::App* dec = app.add_subcommand("decompose",
                                     "read BlockPsd JSON on stdin, write a "
                                     "decomposition; --mode lemma|re|im|envelope");
  dec->add_option("--mode", dec_mode, "decomposition flavor")
      ->check(CLI::IsMember({"lemma", "re", "im", "envelope"}));

  SuiteConfig suite;
  std::string dims_spec = "2x2,3x3,4x4,5x5,6x6";
  bool check_fail_on_violation = false;  // violations already exit 3
  CLI::App* chk = app.add_subcommand("check", "run the verification suite");
  chk->add_option("--dims", dims_spec, "instance sizes, NxM[,NxM...]");
  chk->add_option("--trials", suite.trials, "trials per check")->check(CLI::PositiveNumber);
  chk->add_option("--seed", suite.seed, "campaign seed");
  chk->add_option("--battery", suite.battery_spec,
                  "norm battery, e.g. op,tr,fro,s:1.5,kf:*");
  chk->add_flag("--full", suite.full, "per-trial CSV on stdout instead of JSON");
  chk->add_flag("--boundary", suite.boundary, "generate on the PSD boundary (margin 0)");
  chk->add_flag("--fail-on-violation", check_fail_on_violation,
                "exit 3 on violations (already the default for check)");
  chk->add_option("--jobs", suite.jobs, "worker threads (wall time only)")
      ->check(CLI::Range(1, 256));

  HuntConfig hc;
  std::string constraint = "normal", method = "hc", history_path;
  bool hunt_fail_on_violation = false;
  CLI::App* hnt = app.add_subcommand("hunt", "optimization search for violations");
  hnt->add_option("--n", hc.n, "block size (instance is 2n x 2n)")
      ->check(CLI::Range(1, 16));
  hnt->add_option("--constraint", constraint, "normal|hermitian|any");
  hnt->add_option("--iters", hc.iterations, "total iterations across chains")
      ->check(CLI::PositiveNumber);
  hnt->add_option("--seed", hc.seed, "search seed");
  hnt->add_option("--method", method, "rr (random restart) | hc (hill climb)");
  hnt->add_option("--emit-history", history_path,
                  "write the winning chain's (iteration,score) CSV to this file");
  hnt->add_flag("--fail-on-violation", hunt_fail_on_violation,
                "exit 3 if a re-verified violation was found");
  hnt->add_option("--jobs", hc.jobs, "worker threads (wall time only)")
      ->check(CLI::Range(1, 256));

  Index probe_n = 2;
  long probe_restarts = 8;
  uint64_t probe_seed = 0;
  CLI::App* prb = app.add_subcommand(
      "probe-real", "real-orthogonal decomposition probe on a generated real instance");
  prb->add_option("--n", probe_n, "block size")->check(CLI::Range(1, 16));
  prb->add_option("--restarts", probe_restarts, "optimizer restarts")
      ->check(CLI::PositiveNumber);
  prb->add_option("--seed", probe_seed, "instance + optimizer seed");

  app.add_subcommand("example", "print the rank-one equality fixture");

  try {
    app.parse(argc, argv);
    apply_env_seed(suite.seed);
    apply_env_seed(hc.seed);
    apply_env_seed(probe_seed);
    suite.dims = parse_dims(dims_spec);
    hc.constraint = parse_constraint(constraint);
    hc.method = parse_method(method);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const psdblk::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (dec->parsed()) return run_decompose(dec_mode);
    if (chk->parsed()) return run_check(suite);
    if (hnt->parsed()) return run_hunt(hc, history_path, hunt_fail_on_violation);
    if (prb->parsed()) return run_probe(probe_n, probe_restarts, probe_seed);
    return run_example();
  } catch (const psdblk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
