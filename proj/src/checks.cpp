// SPDX-License-Identifier: Apache-2.0
#include "psdblk/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

#include "psdblk/errors.hpp"
#include "psdblk/generators.hpp"
#include "psdblk/parallel.hpp"
#include "psdblk/rng.hpp"

namespace psdblk {

namespace {

std::vector<double> to_std(const RealVector& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

std::string num_str(double p) {
  std::ostringstream os;
  os << p;
  return os.str();
}

RealVector pow_sv(const RealVector& sv, double p) {
  RealVector out(sv.size());
  for (Index i = 0; i < sv.size(); ++i) out(i) = std::pow(sv(i), p);
  return out;
}

void require_psd_input(const ComplexMatrix& Z, const char* name) {
  if (Z.rows() != Z.cols()) throw DimensionMismatch(std::string(name) + " must be square");
  if (!is_hermitian(Z)) {
    throw NotHermitian(std::string(name) + " is not Hermitian", hermitian_residual(Z));
  }
  RealVector lam = hermitian_eigenvalues_desc(Z);
  double lmin = lam(lam.size() - 1);
  double lmax = std::max(lam(0), 0.0);
  if (lmin < -kDefaultTol * (1.0 + lmax)) {
    throw NotPsd(std::string(name) + " is not PSD", lmin);
  }
}

void require_equal_blocks(const BlockPsd& M, const char* what) {
  if (M.n != M.m) {
    std::ostringstream os;
    os << what << " needs equal block sizes, got " << M.n << " and " << M.m;
    throw UnequalBlockSizes(os.str());
  }
}

// One report per battery norm, shared lhs/rhs singular-value data.
void battery_rows(std::vector<CheckReport>& out, const std::string& id, uint64_t fp,
                  const NormBattery& battery, bool precond,
                  const std::function<double(const NormKind&)>& lhs_of,
                  const std::function<double(const NormKind&)>& rhs_of) {
  for (const NormKind& kind : battery.kinds) {
    out.push_back(make_check_report(id, kind.str(), fp, lhs_of(kind), rhs_of(kind), precond));
  }
}

CheckReport majorization_row(const std::string& id, uint64_t fp, std::vector<double> upper,
                             std::vector<double> lower, bool precond) {
  MajorizationResult maj = weak_majorizes(std::move(upper), std::move(lower));
  return make_check_report(id, "maj", fp, maj.worst_gap, 0.0, precond);
}

}  // namespace

CheckReport make_check_report(std::string id, std::string norm, uint64_t fingerprint,
                              double lhs, double rhs, bool precondition_met) {
  CheckReport r;
  r.id = std::move(id);
  r.norm = std::move(norm);
  r.fingerprint = fingerprint;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.pass = !precondition_met || r.margin >= -check_epsilon(rhs);
  r.precondition_met = precondition_met;
  return r;
}

std::vector<CheckReport> check_lw(const BlockPsd& M, const NormBattery& battery) {
  require_equal_blocks(M, "check_lw");
  bool precond = is_hermitian(M.X);
  uint64_t fp = fingerprint64(M);
  RealVector svM = hermitian_sv(M.assemble());
  RealVector svS = hermitian_sv(M.A + M.B);
  std::vector<CheckReport> out;
  battery_rows(
      out, "lw", fp, battery, precond,
      [&](const NormKind& k) { return norm_from_sv(svM, k); },
      [&](const NormKind& k) { return norm_from_sv(svS, k); });
  out.push_back(majorization_row("lw", fp, to_std(svS), to_std(svM), precond));
  return out;
}

std::vector<CheckReport> check_cor_p(const BlockPsd& M, double p, const NormBattery& battery) {
  require_equal_blocks(M, "check_cor_p");
  if (!(p > 0.0)) {
    std::ostringstream os;
    os << "check_cor_p requires p > 0, got " << p;
    throw NonpositiveExponent(os.str());
  }
  uint64_t fp = fingerprint64(M);
  // Spectral mapping: the norms of M^p, (A+B)^p, |X-X*|^p only need the
  // p-th powers of the respective spectra.
  RealVector svMp = pow_sv(hermitian_sv(M.assemble()), p);
  RealVector svSp = pow_sv(hermitian_sv(M.A + M.B), p);
  RealVector svKp = pow_sv(singular_values(M.X - M.X.adjoint()), p);
  const double factor = std::pow(2.0, std::abs(p - 1.0));
  std::vector<CheckReport> out;
  battery_rows(
      out, "cor_p:" + num_str(p), fp, battery, true,
      [&](const NormKind& k) { return norm_from_sv(svMp, k); },
      [&](const NormKind& k) {
        return factor * (norm_from_sv(svSp, k) + norm_from_sv(svKp, k));
      });
  return out;
}

ConcaveFunction ConcaveFunction::power(double p) {
  if (!(p > 0.0 && p <= 1.0)) {
    std::ostringstream os;
    os << "power tag needs p in (0, 1], got " << p;
    throw UnknownFunctionTag(os.str());
  }
  ConcaveFunction f;
  f.tag = Tag::Power;
  f.p = p;
  return f;
}

ConcaveFunction ConcaveFunction::log1p() {
  ConcaveFunction f;
  f.tag = Tag::Log1p;
  return f;
}

ConcaveFunction ConcaveFunction::ratio() {
  ConcaveFunction f;
  f.tag = Tag::Ratio;
  return f;
}

ConcaveFunction ConcaveFunction::parse(std::string_view name) {
  if (name == "log1p") return log1p();
  if (name == "ratio") return ratio();
  if (name.substr(0, 4) == "pow:") {
    try {
      return power(std::stod(std::string(name.substr(4))));
    } catch (const std::logic_error&) {
      throw UnknownFunctionTag("bad power in '" + std::string(name) + "'");
    }
  }
  throw UnknownFunctionTag("unknown concave function tag '" + std::string(name) + "'");
}

double ConcaveFunction::operator()(double t) const {
  switch (tag) {
    case Tag::Power: return std::pow(t, p);
    case Tag::Log1p: return std::log1p(t);
    case Tag::Ratio: return t / (1.0 + t);
  }
  return 0.0;
}

std::string ConcaveFunction::name() const {
  switch (tag) {
    case Tag::Power: return "pow:" + num_str(p);
    case Tag::Log1p: return "log1p";
    case Tag::Ratio: return "ratio";
  }
  return "?";
}

CheckReport check_subadditivity(const ComplexMatrix& S, const ComplexMatrix& T,
                                const ConcaveFunction& f) {
  if (S.rows() != T.rows() || S.cols() != T.cols())
    throw DimensionMismatch("S and T must have equal shapes");
  require_psd_input(S, "S");
  require_psd_input(T, "T");
  RealVector eS = hermitian_eigenvalues_desc(S);
  RealVector eT = hermitian_eigenvalues_desc(T);
  RealVector eSum = hermitian_eigenvalues_desc(S + T);
  std::vector<double> upper(eS.size()), lower(eS.size());
  for (Index i = 0; i < eS.size(); ++i) {
    upper[i] = f(std::max(eS(i), 0.0)) + f(std::max(eT(i), 0.0));
    lower[i] = f(std::max(eSum(i), 0.0));
  }
  return majorization_row("subadd:" + f.name(), fingerprint64_pair(S, T),
                          std::move(upper), std::move(lower), true);
}

std::vector<CheckReport> check_elem1(const ComplexMatrix& S, const ComplexMatrix& T,
                                     double p, const NormBattery& battery) {
  if (!(p >= 1.0)) {
    std::ostringstream os;
    os << "check_elem1 requires p >= 1, got " << p;
    throw ExponentBelowOne(os.str());
  }
  if (S.rows() != T.rows() || S.cols() != T.cols())
    throw DimensionMismatch("S and T must have equal shapes");
  require_psd_input(S, "S");
  require_psd_input(T, "T");
  RealVector svMid = pow_sv(hermitian_sv((S + T) / 2.0), p);
  RealVector svS = pow_sv(hermitian_sv(S), p);
  RealVector svT = pow_sv(hermitian_sv(T), p);
  std::vector<CheckReport> out;
  battery_rows(
      out, "elem1:" + num_str(p), fingerprint64_pair(S, T), battery, true,
      [&](const NormKind& k) { return norm_from_sv(svMid, k); },
      [&](const NormKind& k) {
        return (norm_from_sv(svS, k) + norm_from_sv(svT, k)) / 2.0;
      });
  return out;
}

std::vector<CheckReport> check_accretive(const BlockPsd& M, const NormBattery& battery) {
  require_equal_blocks(M, "check_accretive");
  uint64_t fp = fingerprint64(M);
  ComplexMatrix reX = re_part(M.X);
  RealVector eR = hermitian_eigenvalues_desc(reX);
  double lmax = std::max(eR(0), 0.0);
  bool precond = eR(eR.size() - 1) >= -kDefaultTol * (1.0 + lmax);

  RealVector svM = hermitian_sv(M.assemble());
  RealVector svS = hermitian_sv(M.A + M.B);
  RealVector svR = hermitian_sv(reX);
  std::vector<CheckReport> out;
  battery_rows(
      out, "accretive", fp, battery, precond,
      [&](const NormKind& k) { return norm_from_sv(svM, k); },
      [&](const NormKind& k) { return norm_from_sv(svS, k) + norm_from_sv(svR, k); });

  // Proof-level step: sigma(M) against sorted-eigenvalue sums, zero padded.
  RealVector eS = hermitian_eigenvalues_desc(M.A + M.B);
  std::vector<double> upper(eS.size());
  for (Index i = 0; i < eS.size(); ++i) upper[i] = eS(i) + eR(i);
  out.push_back(majorization_row("accretive", fp, std::move(upper), to_std(svM), precond));
  return out;
}

std::string range_mode_name(RangeMode mode) {
  switch (mode) {
    case RangeMode::FullRange: return "range:full";
    case RangeMode::RelativeInterior: return "range:relint";
    case RangeMode::Unconditional2w: return "range:2w";
  }
  return "?";
}

std::vector<CheckReport> check_range_modes(const BlockPsd& M, RangeMode mode,
                                           const NormBattery& battery) {
  require_equal_blocks(M, "check_range_modes");
  uint64_t fp = fingerprint64(M);
  RealVector svM = hermitian_sv(M.assemble());
  RealVector svS = hermitian_sv(M.A + M.B);
  std::vector<CheckReport> out;
  const std::string id = range_mode_name(mode);

  if (mode == RangeMode::FullRange) {
    RangePosition pos = classify_zero_vs_range(M.X);
    bool precond = pos.verdict == RangeVerdict::ZeroOutsideRange;
    RealVector svX = singular_values(M.X);
    battery_rows(
        out, id, fp, battery, precond,
        [&](const NormKind& k) { return norm_from_sv(svM, k); },
        [&](const NormKind& k) { return norm_from_sv(svS, k) + norm_from_sv(svX, k); });
    return out;
  }

  double w = numerical_radius(M.X).w;
  bool precond = true;
  if (mode == RangeMode::RelativeInterior) {
    precond = classify_zero_vs_range(M.X).verdict != RangeVerdict::ZeroInside;
  }
  double factor = mode == RangeMode::RelativeInterior ? 1.0 : 2.0;
  out.push_back(make_check_report(id, "op", fp, svM(0), svS(0) + factor * w, precond));
  return out;
}

std::vector<CheckReport> check_direct_sum(const BlockPsd& M, const NormBattery& battery) {
  require_equal_blocks(M, "check_direct_sum");
  uint64_t fp = fingerprint64(M);
  RealVector svM = hermitian_sv(M.assemble());
  RealVector dup(2 * svM.size());
  for (Index i = 0; i < svM.size(); ++i) {
    dup(2 * i) = svM(i);
    dup(2 * i + 1) = svM(i);
  }
  RealVector eA = hermitian_sv(M.A);
  RealVector eB = hermitian_sv(M.B);
  RealVector svAB(eA.size() + eB.size());
  svAB << eA, eB;
  std::sort(svAB.data(), svAB.data() + svAB.size(), std::greater<double>());

  std::vector<CheckReport> out;
  battery_rows(
      out, "direct_sum", fp, battery, true,
      [&](const NormKind& k) { return norm_from_sv(dup, k); },
      [&](const NormKind& k) { return 2.0 * norm_from_sv(svAB, k); });
  std::vector<double> upper = to_std(svAB);
  for (double& v : upper) v *= 2.0;
  out.push_back(majorization_row("direct_sum", fp, std::move(upper), to_std(dup), true));
  return out;
}

CheckReport check_schatten(const BlockPsd& M, double p) {
  if (!(p >= 1.0)) {
    std::ostringstream os;
    os << "check_schatten requires p >= 1, got " << p;
    throw ExponentBelowOne(os.str());
  }
  NormKind kind = NormKind::schatten(p);
  double lhs = norm_from_sv(hermitian_sv(M.assemble()), kind);
  double normA = norm_from_sv(hermitian_sv(M.A), kind);
  double normB = norm_from_sv(hermitian_sv(M.B), kind);
  double rhs = std::pow(2.0, 1.0 - 1.0 / p) *
               std::pow(std::pow(normA, p) + std::pow(normB, p), 1.0 / p);
  return make_check_report("schatten:" + num_str(p), kind.str(), fingerprint64(M), lhs,
                           rhs, true);
}

// ---- suite driver ----

namespace {

struct CheckSpec {
  enum class Kind { Lw, CorP, Subadd, Elem1, Accretive, Range, DirectSum, Schatten };
  std::string id;
  Kind kind;
  double p = 0.0;
  ConcaveFunction f;
  RangeMode range_mode = RangeMode::FullRange;
  GeneratorMode gen_mode = GeneratorMode::Unconstrained;
  bool pair = false;
  bool square_only = true;
};

std::vector<CheckSpec> registry() {
  std::vector<CheckSpec> specs;
  auto add = [&](CheckSpec s) { specs.push_back(std::move(s)); };

  add({.id = "lw", .kind = CheckSpec::Kind::Lw, .gen_mode = GeneratorMode::HermitianX});
  for (double p : {0.25, 0.5, 1.0, 1.5, 2.0, 3.0}) {
    add({.id = "cor_p:" + num_str(p), .kind = CheckSpec::Kind::CorP, .p = p});
  }
  for (const char* tag : {"pow:0.5", "log1p", "ratio"}) {
    CheckSpec s{.kind = CheckSpec::Kind::Subadd, .f = ConcaveFunction::parse(tag),
                .pair = true, .square_only = false};
    s.id = "subadd:" + s.f.name();
    add(std::move(s));
  }
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    add({.id = "elem1:" + num_str(p), .kind = CheckSpec::Kind::Elem1, .p = p,
         .pair = true, .square_only = false});
  }
  add({.id = "accretive", .kind = CheckSpec::Kind::Accretive,
       .gen_mode = GeneratorMode::AccretiveX});
  add({.id = "range:full", .kind = CheckSpec::Kind::Range,
       .range_mode = RangeMode::FullRange, .gen_mode = GeneratorMode::ZeroOutsideRangeX});
  add({.id = "range:relint", .kind = CheckSpec::Kind::Range,
       .range_mode = RangeMode::RelativeInterior,
       .gen_mode = GeneratorMode::ZeroOutsideRangeX});
  add({.id = "range:2w", .kind = CheckSpec::Kind::Range,
       .range_mode = RangeMode::Unconditional2w});
  add({.id = "direct_sum", .kind = CheckSpec::Kind::DirectSum});
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    add({.id = "schatten:" + num_str(p), .kind = CheckSpec::Kind::Schatten, .p = p,
         .square_only = false});
  }
  return specs;
}

uint64_t trial_seed(uint64_t seed, const std::string& check_id, long trial) {
  return mix64(derive_seed(seed, check_id) ^ static_cast<uint64_t>(trial));
}

struct PairInstance {
  ComplexMatrix S, T;
};

PairInstance draw_pair(Index dim, uint64_t seed) {
  std::ostringstream label;
  label << "gen/pair/" << dim;
  SplitMix64 rng = stream(seed, label.str());
  PairInstance p;
  p.S = wishart(rng, dim);
  p.T = wishart(rng, dim);
  return p;
}

std::vector<CheckReport> run_check(const CheckSpec& spec, const SuiteConfig& config,
                                   long trial, Index n, Index m) {
  uint64_t ts = trial_seed(config.seed, spec.id, trial);
  double margin = config.boundary ? 0.0 : kInteriorMargin;
  NormBattery battery = NormBattery::parse(config.battery_spec, n + m);
  if (spec.pair) {
    PairInstance inst = draw_pair(n + m, ts);
    if (spec.kind == CheckSpec::Kind::Subadd) {
      return {check_subadditivity(inst.S, inst.T, spec.f)};
    }
    return check_elem1(inst.S, inst.T, spec.p, battery);
  }
  BlockPsd M = random_block_psd(n, m, spec.gen_mode, ts, margin);
  switch (spec.kind) {
    case CheckSpec::Kind::Lw: return check_lw(M, battery);
    case CheckSpec::Kind::CorP: return check_cor_p(M, spec.p, battery);
    case CheckSpec::Kind::Accretive: return check_accretive(M, battery);
    case CheckSpec::Kind::Range: return check_range_modes(M, spec.range_mode, battery);
    case CheckSpec::Kind::DirectSum: return check_direct_sum(M, battery);
    case CheckSpec::Kind::Schatten: return {check_schatten(M, spec.p)};
    default: break;
  }
  throw Error("unhandled check kind");
}

// Sort key: battery norms in first-seen order, Ky Fan ascending, "maj" last.
std::tuple<int, int, long> row_order_key(const std::string& norm, long first_seen) {
  if (norm == "maj") return {2, 0, 0};
  if (norm.rfind("kf:", 0) == 0) return {1, std::stoi(norm.substr(3)), 0};
  return {0, 0, first_seen};
}

struct RowAgg {
  long trials = 0;
  long passes = 0;
  long precond = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  long worst_trial = -1;
  uint64_t worst_fp = 0;
  double min_margin_any = std::numeric_limits<double>::infinity();
  long worst_trial_any = -1;
  uint64_t worst_fp_any = 0;
  long first_seen = 0;
};

void append_csv_row(std::string& csv, const CheckReport& r, long trial) {
  char buf[160];
  std::snprintf(buf, sizeof buf, ",%ld,%s,%d,%.17g,%.17g,%.17g,%d\n", trial,
                fingerprint_hex(r.fingerprint).c_str(), r.precondition_met ? 1 : 0, r.lhs,
                r.rhs, r.margin, r.pass ? 1 : 0);
  csv += r.id;
  csv.push_back(',');
  csv += r.norm;
  csv += buf;
}

Json instance_json(const CheckSpec& spec, const SuiteConfig& config, long trial, Index n,
                   Index m) {
  uint64_t ts = trial_seed(config.seed, spec.id, trial);
  std::ostringstream dims;
  dims << n << "x" << m;
  if (spec.pair) {
    PairInstance inst = draw_pair(n + m, ts);
    Json j{{"S", matrix_to_json(inst.S)}, {"T", matrix_to_json(inst.T)}};
    j["provenance"] = Json{{"mode", "pair"},
                           {"seed", ts},
                           {"dims", dims.str()},
                           {"generator_version", kGeneratorVersion}};
    return j;
  }
  double margin = config.boundary ? 0.0 : kInteriorMargin;
  BlockPsd M = random_block_psd(n, m, spec.gen_mode, ts, margin);
  Json j = block_psd_to_json(M);
  j["provenance"] = Json{{"mode", mode_name(spec.gen_mode)},
                         {"seed", ts},
                         {"dims", dims.str()},
                         {"generator_version", kGeneratorVersion}};
  return j;
}

}  // namespace

Json SuiteReport::to_json() const {
  std::ostringstream dims;
  for (size_t i = 0; i < config.dims.size(); ++i) {
    if (i) dims << ",";
    dims << config.dims[i].first << "x" << config.dims[i].second;
  }
  Json rows_json = Json::array();
  for (const SuiteRow& row : rows) {
    rows_json.push_back(Json{{"id", row.id},
                             {"norm", row.norm},
                             {"trials", row.trials},
                             {"passes", row.passes},
                             {"precondition_met", row.precondition_met},
                             {"min_margin", row.min_margin},
                             {"worst_trial", row.worst_trial},
                             {"worst_fingerprint", row.worst_fingerprint},
                             {"worst_instance", row.worst_instance}});
  }
  return Json{{"config", Json{{"battery", config.battery_spec},
                              {"boundary", config.boundary},
                              {"dims", dims.str()},
                              {"seed", config.seed},
                              {"trials", config.trials}}},
              {"generator_version", kGeneratorVersion},
              {"rows", std::move(rows_json)},
              {"violations", violations}};
}

SuiteReport run_suite(const SuiteConfig& config) {
  if (config.trials < 1) throw EmptyInput("trials must be >= 1");
  if (config.dims.empty()) throw EmptyInput("dims must be non-empty");

  SuiteReport report;
  report.config = config;
  if (config.full) {
    report.csv = "id,norm,trial,fingerprint,precondition_met,lhs,rhs,margin,pass\n";
  }

  for (const CheckSpec& spec : registry()) {
    std::vector<std::pair<Index, Index>> dims;
    for (auto [n, m] : config.dims) {
      if (!spec.square_only || n == m) dims.emplace_back(n, m);
    }
    if (dims.empty()) {
      throw UnsupportedModeDimensions("check " + spec.id +
                                      " needs at least one square dims entry");
    }

    std::vector<std::vector<CheckReport>> slots(config.trials);
    parallel_for(config.trials, config.jobs, [&](long t) {
      auto [n, m] = dims[t % dims.size()];
      try {
        slots[t] = run_check(spec, config, t, n, m);
      } catch (const Error& e) {
        std::ostringstream os;
        os << e.what() << " (check " << spec.id << ", trial " << t << ", dims " << n << "x"
           << m << ")";
        throw Error(os.str());
      }
    });

    std::map<std::string, RowAgg> agg;
    long next_seen = 0;
    for (long t = 0; t < config.trials; ++t) {
      for (const CheckReport& r : slots[t]) {
        auto [it, inserted] = agg.try_emplace(r.norm);
        RowAgg& a = it->second;
        if (inserted) a.first_seen = next_seen++;
        a.trials++;
        if (r.pass) a.passes++;
        if (r.precondition_met) {
          a.precond++;
          if (r.margin < a.min_margin) {
            a.min_margin = r.margin;
            a.worst_trial = t;
            a.worst_fp = r.fingerprint;
          }
          if (!r.pass) report.violations++;
        }
        if (r.margin < a.min_margin_any) {
          a.min_margin_any = r.margin;
          a.worst_trial_any = t;
          a.worst_fp_any = r.fingerprint;
        }
        if (config.full) append_csv_row(report.csv, r, t);
      }
    }

    std::vector<std::pair<std::string, RowAgg>> ordered(agg.begin(), agg.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) {
      return row_order_key(x.first, x.second.first_seen) <
             row_order_key(y.first, y.second.first_seen);
    });
    for (auto& [norm, a] : ordered) {
      SuiteRow row;
      row.id = spec.id;
      row.norm = norm;
      row.trials = a.trials;
      row.passes = a.passes;
      row.precondition_met = a.precond;
      bool any = a.precond == 0;
      row.min_margin = any ? a.min_margin_any : a.min_margin;
      row.worst_trial = any ? a.worst_trial_any : a.worst_trial;
      row.worst_fingerprint = fingerprint_hex(any ? a.worst_fp_any : a.worst_fp);
      auto [n, m] = dims[row.worst_trial % dims.size()];
      row.worst_instance = instance_json(spec, config, row.worst_trial, n, m);
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace psdblk
