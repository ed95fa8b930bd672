// SPDX-License-Identifier: Apache-2.0
#include "psdblk/search.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "psdblk/errors.hpp"
#include "psdblk/generators.hpp"
#include "psdblk/norms.hpp"
#include "psdblk/parallel.hpp"
#include "psdblk/rng.hpp"

namespace psdblk {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSigmaInit = 0.5;
constexpr double kSigmaFloor = 1e-6;
constexpr int kStallLimit = 50;
constexpr long kProbeMaxIters = 20000;
constexpr double kProbeTargetF = 1e-24;
}  // namespace

std::string method_name(SearchMethod m) {
  return m == SearchMethod::RandomRestart ? "rr" : "hc";
}

std::string constraint_name(SearchConstraint c) {
  switch (c) {
    case SearchConstraint::NormalX: return "normal";
    case SearchConstraint::HermitianX: return "hermitian";
    case SearchConstraint::Unconstrained: return "any";
  }
  return "?";
}

SearchMethod parse_method(std::string_view s) {
  if (s == "rr") return SearchMethod::RandomRestart;
  if (s == "hc") return SearchMethod::HillClimb;
  throw ParseError("unknown search method '" + std::string(s) + "' (want rr|hc)");
}

SearchConstraint parse_constraint(std::string_view s) {
  if (s == "normal") return SearchConstraint::NormalX;
  if (s == "hermitian") return SearchConstraint::HermitianX;
  if (s == "any") return SearchConstraint::Unconstrained;
  throw ParseError("unknown constraint '" + std::string(s) +
                   "' (want normal|hermitian|any)");
}

ViolationScore violation_score(const BlockPsd& M) {
  if (M.n != M.m) throw UnequalBlockSizes("violation_score needs equal block sizes");
  RealVector svM = hermitian_sv(M.assemble());
  RealVector svS = hermitian_sv(M.A + M.B);
  ViolationScore out{-kInf, 0};
  double pm = 0.0, ps = 0.0;
  // The last prefix gap is the trace identity (always zero), so it is excluded:
  // keeping it would floor the score at 0 and hide strictly negative certificates.
  for (Index k = 1; k < svM.size(); ++k) {
    pm += svM(k - 1);
    if (k <= svS.size()) ps += svS(k - 1);
    double gap = pm - ps;
    if (gap > out.score) {
      out.score = gap;
      out.worst_k = static_cast<int>(k);
    }
  }
  return out;
}

namespace {

// ---- parameter space for hunt ----

long param_count(Index n, SearchConstraint c) {
  long base = 4 * n * n;  // complex factors L_A, L_B
  switch (c) {
    case SearchConstraint::Unconstrained: return base + 2 * n * n;
    case SearchConstraint::HermitianX: return base + n * n;
    case SearchConstraint::NormalX: return base + n * n + 2 * n;
  }
  return base;
}

ComplexMatrix unpack_complex(const double*& p, Index rows, Index cols) {
  ComplexMatrix Z(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) {
      Z(i, j) = Complex(p[0], p[1]);
      p += 2;
    }
  return Z;
}

ComplexMatrix unpack_hermitian(const double*& p, Index n) {
  ComplexMatrix H = ComplexMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) H(i, i) = Complex(*p++, 0.0);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      H(i, j) = Complex(p[0], p[1]);
      H(j, i) = std::conj(H(i, j));
      p += 2;
    }
  return H;
}

ComplexMatrix unpack_skew_hermitian(const double*& p, Index n) {
  ComplexMatrix S = ComplexMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) S(i, i) = Complex(0.0, *p++);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      S(i, j) = Complex(p[0], p[1]);
      S(j, i) = -std::conj(S(i, j));
      p += 2;
    }
  return S;
}

// Cayley transform of a skew-Hermitian matrix; I+S is always invertible.
ComplexMatrix cayley_unitary(const ComplexMatrix& S) {
  ComplexMatrix I = ComplexMatrix::Identity(S.rows(), S.cols());
  return (I + S).partialPivLu().solve(I - S);
}

struct Evaluated {
  BlockPsd M;
  double score;
  int worst_k;
};

Evaluated eval_params(const std::vector<double>& params, Index n, SearchConstraint c) {
  const double* p = params.data();
  Evaluated ev;
  BlockPsd& M = ev.M;
  M.n = M.m = n;
  ComplexMatrix LA = unpack_complex(p, n, n);
  ComplexMatrix LB = unpack_complex(p, n, n);
  M.A = re_part(LA * LA.adjoint());
  M.B = re_part(LB * LB.adjoint());
  switch (c) {
    case SearchConstraint::Unconstrained:
      M.X = unpack_complex(p, n, n);
      break;
    case SearchConstraint::HermitianX:
      M.X = unpack_hermitian(p, n);
      break;
    case SearchConstraint::NormalX: {
      ComplexMatrix W = cayley_unitary(unpack_skew_hermitian(p, n));
      Eigen::VectorXcd d(n);
      for (Index i = 0; i < n; ++i) {
        d(i) = Complex(p[0], p[1]);
        p += 2;
      }
      M.X = W * d.asDiagonal() * W.adjoint();
      break;
    }
  }

  // PSD repair: shift both corners so the assembled matrix sits on the PSD
  // boundary; X (and its structure) is untouched.
  RealVector lam = hermitian_eigenvalues_desc(M.assemble());
  double s = std::max(0.0, -lam(lam.size() - 1));
  if (s > 0.0) {
    M.A += s * ComplexMatrix::Identity(n, n);
    M.B += s * ComplexMatrix::Identity(n, n);
  }

  // Shift identity: eigenvalues of M+sI and (A+B)+2sI come from lam directly.
  RealVector svS = hermitian_eigenvalues_desc(M.A + M.B);
  ev.score = -kInf;
  ev.worst_k = 0;
  double pm = 0.0, ps = 0.0;
  for (Index k = 1; k < 2 * n; ++k) {
    pm += std::max(lam(k - 1) + s, 0.0);
    if (k <= n) ps += std::max(svS(k - 1), 0.0);
    double gap = pm - ps;
    if (gap > ev.score) {
      ev.score = gap;
      ev.worst_k = static_cast<int>(k);
    }
  }
  return ev;
}

struct ChainResult {
  double best_score = -kInf;
  int best_k = 0;
  BlockPsd best_instance;
  std::vector<HistorySample> history;
};

ChainResult run_chain(const HuntConfig& config, int chain, long iters) {
  SplitMix64 rng(derive_seed(config.seed, "chain/" + std::to_string(chain)));
  const long np = param_count(config.n, config.constraint);
  std::vector<double> params(np), cand(np);
  ChainResult res;
  double sigma = kSigmaInit;
  double current = -kInf;
  int stalls = 0;
  bool need_restart = true;

  auto fresh = [&](std::vector<double>& v) {
    for (double& x : v) x = rng.gaussian();
  };

  for (long it = 0; it < iters; ++it) {
    Evaluated ev;
    if (config.method == SearchMethod::RandomRestart) {
      fresh(params);
      ev = eval_params(params, config.n, config.constraint);
    } else if (need_restart) {
      fresh(params);
      sigma = kSigmaInit;
      stalls = 0;
      need_restart = false;
      ev = eval_params(params, config.n, config.constraint);
      current = ev.score;
    } else {
      cand = params;
      for (double& x : cand) x += sigma * rng.gaussian();
      ev = eval_params(cand, config.n, config.constraint);
      if (ev.score > current) {
        params.swap(cand);
        current = ev.score;
        stalls = 0;
      } else if (++stalls >= kStallLimit) {
        sigma *= 0.5;
        stalls = 0;
        if (sigma < kSigmaFloor) need_restart = true;
      }
    }
    if (ev.score > res.best_score) {
      res.best_score = ev.score;
      res.best_k = ev.worst_k;
      res.best_instance = std::move(ev.M);
      res.history.push_back({it, ev.score});
    }
  }
  return res;
}

}  // namespace

Json SearchRecord::to_json() const {
  Json hist = Json::array();
  for (const HistorySample& h : history) {
    hist.push_back(Json{{"iteration", h.iteration}, {"score", h.score}});
  }
  std::ostringstream dims;
  dims << best_instance.n << "x" << best_instance.m;
  Json inst = block_psd_to_json(best_instance);
  inst["provenance"] = Json{{"mode", "search/" + constraint_name(constraint)},
                            {"seed", seed},
                            {"dims", dims.str()},
                            {"generator_version", kGeneratorVersion}};
  return Json{{"best_score", best_score},
              {"best_k", best_k},
              {"best_instance", std::move(inst)},
              {"iterations", iterations},
              {"seed", seed},
              {"method", method_name(method)},
              {"constraint", constraint_name(constraint)},
              {"chains", chains},
              {"best_chain", best_chain},
              {"history", std::move(hist)},
              {"violation_found", violation_found},
              {"reverified_score", reverified_score}};
}

SearchRecord hunt(const HuntConfig& config) {
  if (config.n < 1) throw EmptyInput("hunt needs n >= 1");
  if (config.iterations < 1) throw EmptyInput("hunt needs iterations >= 1");

  std::vector<long> iters(kHuntChains, config.iterations / kHuntChains);
  for (long c = 0; c < config.iterations % kHuntChains; ++c) iters[c]++;

  std::vector<ChainResult> results(kHuntChains);
  parallel_for(kHuntChains, config.jobs, [&](long c) {
    results[c] = run_chain(config, static_cast<int>(c), iters[c]);
  });

  int best = 0;
  for (int c = 1; c < kHuntChains; ++c) {
    if (results[c].best_score > results[best].best_score) best = c;
  }

  SearchRecord rec;
  rec.best_score = results[best].best_score;
  rec.best_k = results[best].best_k;
  rec.best_instance = std::move(results[best].best_instance);
  rec.iterations = config.iterations;
  rec.seed = config.seed;
  rec.method = config.method;
  rec.constraint = config.constraint;
  rec.chains = kHuntChains;
  rec.best_chain = best;
  rec.history = std::move(results[best].history);
  rec.reverified_score = rec.best_score;
  rec.violation_found = false;

  // A positive candidate is re-verified on a serialization round-trip with the
  // PSD validation tightened tenfold before it is reported as a violation.
  RealVector svS = hermitian_sv(rec.best_instance.A + rec.best_instance.B);
  double rhs = 0.0;
  for (Index i = 0; i < std::min<Index>(rec.best_k, svS.size()); ++i) rhs += svS(i);
  if (rec.best_score > 1e-9 * (1.0 + std::abs(rhs))) {
    Json j = block_psd_to_json(rec.best_instance);
    BlockPsd replay = block_psd_from_json(Json::parse(canonical_compact(j)),
                                          kDefaultTol / 10.0);
    ViolationScore vs = violation_score(replay);
    rec.reverified_score = vs.score;
    rec.violation_found = vs.score > 1e-10 * (1.0 + std::abs(rhs));
  }
  return rec;
}

// ---- real orthogonal probe ----

namespace {

double probe_objective(const ComplexMatrix& M, const ComplexMatrix& C1,
                       const ComplexMatrix& C2, const RealMatrix& U,
                       const RealMatrix& V) {
  ComplexMatrix Uc = U.cast<Complex>();
  ComplexMatrix Vc = V.cast<Complex>();
  return (M - Uc * C1 * Uc.adjoint() - Vc * C2 * Vc.adjoint()).squaredNorm();
}

// One curvilinear (Cayley) line-search step on the orthogonal group; the
// iterate stays in the connected component of its starting point.
bool cayley_step(RealMatrix& U, const RealMatrix& G, double& tau, double& f,
                 const std::function<double(const RealMatrix&)>& fval) {
  RealMatrix Omega = G * U.transpose() - U * G.transpose();
  double slope = 0.5 * Omega.squaredNorm();
  if (slope < 1e-30) return false;
  const Index N = U.rows();
  RealMatrix I = RealMatrix::Identity(N, N);
  double t = tau;
  while (t > 1e-20) {
    RealMatrix Y =
        (I + (t / 2.0) * Omega).partialPivLu().solve((I - (t / 2.0) * Omega) * U);
    double fy = fval(Y);
    if (fy <= f - 1e-4 * t * slope) {
      U = Y;
      f = fy;
      tau = std::min(t * 2.0, 64.0);
      return true;
    }
    t *= 0.5;
  }
  return false;
}

RealMatrix random_orthogonal(SplitMix64& rng, Index N) {
  RealMatrix G = gaussian_matrix(rng, N, N, /*real_only=*/true).real();
  Eigen::HouseholderQR<RealMatrix> qr(G);
  RealMatrix Q = qr.householderQ();
  RealMatrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < N; ++j) {
    if (R(j, j) < 0.0) Q.col(j) = -Q.col(j);
  }
  if (Q.determinant() < 0.0) Q.col(0) = -Q.col(0);
  return Q;
}

}  // namespace

Json ProbeResult::to_json() const {
  Json rr = Json::array();
  for (double r : restart_residuals) rr.push_back(r);
  return Json{{"min_residual", min_residual},
              {"restarts", restarts},
              {"seed", seed},
              {"restart_residuals", std::move(rr)},
              {"U", matrix_to_json(U.cast<Complex>())},
              {"V", matrix_to_json(V.cast<Complex>())}};
}

ProbeResult probe_real_decomposition(const BlockPsd& M, long restarts, uint64_t seed) {
  if (M.n != M.m) throw UnequalBlockSizes("probe needs equal block sizes");
  if (restarts < 1) throw EmptyInput("probe needs restarts >= 1");
  ComplexMatrix Mc = M.assemble();
  if (!is_real(Mc)) throw NonRealInput("probe needs an instance with real entries");
  const Index n = M.n, N = 2 * n;

  // Payloads (A+B)/2 +/- Im X, embedded into the two diagonal corners. For a
  // real instance Im X is purely imaginary Hermitian (zero iff X symmetric).
  ComplexMatrix half = (M.A + M.B) / 2.0;
  ComplexMatrix imX = im_part(M.X);
  ComplexMatrix C1 = ComplexMatrix::Zero(N, N);
  ComplexMatrix C2 = ComplexMatrix::Zero(N, N);
  C1.topLeftCorner(n, n) = half + imX;
  C2.bottomRightCorner(n, n) = half - imX;

  ProbeResult out;
  out.restarts = restarts;
  out.seed = seed;
  out.min_residual = kInf;

  for (long r = 0; r < restarts; ++r) {
    SplitMix64 rng(derive_seed(seed, "restart/" + std::to_string(r)));
    RealMatrix U, V;
    if (r < 4) {
      U = RealMatrix::Identity(N, N);
      V = RealMatrix::Identity(N, N);
    } else {
      U = random_orthogonal(rng, N);
      V = random_orthogonal(rng, N);
    }
    // Cycle through the four connected-component sign combinations.
    if (r % 4 & 1) U.col(0) = -U.col(0);
    if (r % 4 & 2) V.col(0) = -V.col(0);

    double f = probe_objective(Mc, C1, C2, U, V);
    double tauU = 1e-3, tauV = 1e-3;
    for (long it = 0; it < kProbeMaxIters && f > kProbeTargetF; ++it) {
      ComplexMatrix Uc = U.cast<Complex>();
      ComplexMatrix Vc = V.cast<Complex>();
      ComplexMatrix E = Mc - Uc * C1 * Uc.adjoint() - Vc * C2 * Vc.adjoint();
      RealMatrix GU = -4.0 * (E * Uc * C1).real();
      bool moved = cayley_step(U, GU, tauU, f,
                               [&](const RealMatrix& Y) {
                                 return probe_objective(Mc, C1, C2, Y, V);
                               });
      Uc = U.cast<Complex>();
      E = Mc - Uc * C1 * Uc.adjoint() - Vc * C2 * Vc.adjoint();
      RealMatrix GV = -4.0 * (E * Vc * C2).real();
      moved |= cayley_step(V, GV, tauV, f,
                           [&](const RealMatrix& Y) {
                             return probe_objective(Mc, C1, C2, U, Y);
                           });
      if (!moved) break;
    }
    double resid = std::sqrt(std::max(f, 0.0));
    out.restart_residuals.push_back(resid);
    if (resid < out.min_residual) {
      out.min_residual = resid;
      out.U = U;
      out.V = V;
    }
  }
  return out;
}

}  // namespace psdblk
