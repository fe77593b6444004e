#include "tprodlab/inequalities.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>

#include "tprodlab/algebra.hpp"
#include "tprodlab/functions.hpp"
#include "tprodlab/generators.hpp"
#include "tprodlab/spectral.hpp"

namespace tprod {

namespace {

double tr(const Tensor3& c) { return trace(c).real(); }
double btr(const Tensor3& c) { return bcirc_trace(c).real(); }

double largest(std::initializer_list<double> xs) {
  double r = 0.0;
  for (double x : xs) r = std::max(r, std::abs(x));
  return r;
}

std::vector<FunctionSpec> pick_functions(const CheckConfig& cfg, std::initializer_list<const char*> defaults) {
  std::vector<FunctionSpec> out;
  if (cfg.functions.empty())
    for (const char* n : defaults) out.push_back(function_by_name(n));
  else
    for (const auto& n : cfg.functions) out.push_back(function_by_name(n));
  return out;
}

FunctionSpec derivative_of(const FunctionSpec& f) {
  FunctionSpec d;
  d.name = f.name + "'";
  d.f = f.df;
  d.domain = f.domain;
  return d;
}

bool real_domain(const FunctionSpec& f) { return f.domain == Domain::Real; }

Tensor3 herm(const Tensor3& c) { return hermitian_part(c); }

Index family_size(const CheckConfig& cfg, std::size_t trial) {
  if (cfg.n_family.empty()) return 2;
  return std::max<Index>(1, cfg.n_family[trial % cfg.n_family.size()]);
}

constexpr std::array<double, 3> kInteriorT{0.25, 0.5, 0.75};

}  // namespace

double min_eig(const Tensor3& c) { return herm_spectrum(hermitian_part(c)).lambda_min; }

std::vector<Tensor3> spectral_projectors(const Tensor3& c, double rel_gap) {
  const Spectrum s = herm_spectrum(c);
  const RealVector all = s.eigenvalues();  // descending
  const double norm = std::max(std::abs(s.lambda_max), std::abs(s.lambda_min));
  const double gap = rel_gap * (1.0 + norm);

  // Cluster representatives: walk the sorted list and cut at gaps > gap.
  std::vector<std::pair<double, double>> ranges;  // [hi, lo]
  for (Index i = 0; i < all.size(); ++i) {
    if (ranges.empty() || ranges.back().second - all[i] > gap)
      ranges.emplace_back(all[i], all[i]);
    else
      ranges.back().second = all[i];
  }
  std::vector<Tensor3> projectors;
  for (const auto& [hi, lo] : ranges) {
    RealMatrix ind(s.m, s.p);
    for (Index f = 0; f < s.p; ++f)
      for (Index j = 0; j < s.m; ++j) ind(j, f) = (s.lambda(j, f) <= hi && s.lambda(j, f) >= lo) ? 1.0 : 0.0;
    Tensor3 pr = hermitian_part(from_spectrum(s.vectors, ind));
    projectors.push_back(s.real ? real_part(pr) : pr);
  }
  return projectors;
}

Tensor3 pinch(const std::vector<Tensor3>& projectors, const Tensor3& x) {
  Tensor3 out(x.m(), x.n(), x.p());
  for (const auto& pr : projectors) out += tprod(tprod(pr, x), pr);
  return out;
}

double relative_entropy(const Tensor3& a, const Tensor3& b) {
  return tr(tprod(a, tlog(a) - tlog(b)));
}

CheckReport check_trace_monotone(const CheckConfig& cfg) {
  const auto fns = pick_functions(cfg, {"identity", "exp", "log", "sqrt"});
  return run_trials(cfg, "trace_monotone", "monotonicity of trace functions",
                    [&](std::size_t, std::uint64_t seed) {
    TrialOutcome o;
    for (std::size_t i = 0; i < fns.size(); ++i) {
      const auto& f = fns[i];
      const auto s = derive_seed(seed, i);
      const auto [c, d] = real_domain(f) ? gen_psd_pair(cfg.m, cfg.p, s, cfg.scale)
                                         : gen_tpd_ordered_pair(cfg.m, cfg.p, s);
      const double lhs = tr(tfunc(d, f));
      const double rhs = tr(tfunc(c, f));
      o.leq(lhs, rhs, largest({c.frobenius_norm(), d.frobenius_norm(), lhs, rhs}));
    }
    return o;
  });
}

CheckReport check_trace_convexity(const CheckConfig& cfg) {
  const auto fns = pick_functions(cfg, {"square", "exp", "quartic"});
  return run_trials(cfg, "trace_convexity", "convexity of trace functions",
                    [&](std::size_t, std::uint64_t seed) {
    TrialOutcome o;
    const Tensor3 c = gen_hermitian(cfg.m, cfg.p, derive_seed(seed, 1), cfg.scale);
    const Tensor3 d = gen_hermitian(cfg.m, cfg.p, derive_seed(seed, 2), cfg.scale);
    const Tensor3 mid = 0.5 * (c + d);
    const double dist = (c - d).frobenius_norm();
    for (const auto& f : fns) {
      const Tensor3 fc = tfunc(c, f), fd = tfunc(d, f), fm = tfunc(mid, f);
      const double lhs = tr(fm);
      const double rhs = 0.5 * tr(fc) + 0.5 * tr(fd);
      const double scale = largest({c.frobenius_norm(), d.frobenius_norm(), lhs, rhs, tr(fc), tr(fd)});
      o.leq(lhs, rhs, scale);
      if (f.strictly_convex) {
        // Equality only at C = D: checked with the block-circulant trace, under
        // which the implication is valid.
        const double bl = btr(fm), br = 0.5 * btr(fc) + 0.5 * btr(fd);
        const double bscale = largest({scale, bl, br});
        if ((br - bl) / (1.0 + bscale) < 1e-10 && dist >= 1e-6) {
          o.slack(-1.0);
          o.count("strict_convexity_violations");
        }
        if ((rhs - lhs) / (1.0 + scale) < 1e-10 && dist >= 1e-6) o.count("t_trace_flat_directions");
      }
      // Equality case C = D.
      const double eq = tr(tfunc(0.5 * (c + c), f));
      o.equality(eq, tr(fc), scale);
    }
    return o;
  });
}

CheckReport check_peierls(const CheckConfig& cfg) {
  const auto fns = pick_functions(cfg, {"square", "exp"});
  auto report = run_trials(cfg, "peierls", "Peierls inequality (block-circulant trace)",
                           [&](std::size_t, std::uint64_t seed) {
    TrialOutcome o;
    const Tensor3 c = gen_hermitian(cfg.m, cfg.p, derive_seed(seed, 1), cfg.scale);
    const auto basis = gen_orthonormal_basis(cfg.m, cfg.p, derive_seed(seed, 2));
    const Spectrum s = herm_spectrum(c);
    const double root_p = std::sqrt(static_cast<double>(cfg.p));
    for (const auto& f : fns) {
      const Tensor3 fc = tfunc(s, f);
      const double lhs = btr(fc);
      double rhs = 0.0;
      for (const auto& v : basis) {
        const LateralMatrix cv = tensor_times_matrix(c, v);
        rhs += f.f((v.matrix().conjugate().cwiseProduct(cv.matrix())).sum().real());
      }
      const double scale = largest({c.frobenius_norm(), lhs, rhs});
      o.leq(rhs, lhs, scale);
      if (tr(fc) < rhs - 1e-8 * (1.0 + scale)) o.count("t_trace_violations");

      // Equality when the basis consists of (unit) eigenmatrices.
      double eq = 0.0;
      for (Index f_idx = 0; f_idx < cfg.p; ++f_idx)
        for (Index j = 0; j < cfg.m; ++j) {
          LateralMatrix w = s.eigenmatrix(j, f_idx);
          w.matrix() *= root_p;
          const LateralMatrix cw = tensor_times_matrix(c, w);
          eq += f.f((w.matrix().conjugate().cwiseProduct(cw.matrix())).sum().real());
        }
      o.equality(eq, lhs, scale);
    }
    return o;
  });
  report.note = "trace is tr(bcirc(C)); t_trace_violations counts trials where the f-diagonal trace breaks the inequality";
  return report;
}

CheckReport check_transfer_rules(const CheckConfig& cfg) {
  static constexpr std::array<double, 3> kScales{0.1, 1.0, 5.0};
  return run_trials(cfg, "transfer_rules", "transfer rule: I + C <= exp(C) and cosh(C) <= exp(C^2/2)",
                    [&](std::size_t trial, std::uint64_t seed) {
    TrialOutcome o;
    const double sc = kScales[trial % kScales.size()] * cfg.scale;
    const Tensor3 c = gen_hermitian(cfg.m, cfg.p, seed, sc);
    const Tensor3 id = identity(cfg.m, cfg.p);
    const Tensor3 e = texp(c);
    const Tensor3 lin = id + c;
    o.slack(min_eig(e - lin) / (1.0 + largest({e.frobenius_norm(), lin.frobenius_norm()})));
    const Tensor3 half_sq = 0.5 * herm(tprod(c, c));
    const Tensor3 g = texp(half_sq);
    const Tensor3 ch = tcosh(c);
    o.slack(min_eig(g - ch) / (1.0 + largest({g.frobenius_norm(), ch.frobenius_norm()})));
    // C = O: both sides equal I.
    const Tensor3 z = zero(cfg.m, cfg.m, cfg.p);
    o.equality(0.0, (texp(z) - id).frobenius_norm(), 1.0);
    o.equality(0.0, (texp(z) - tcosh(z)).frobenius_norm(), 1.0);
    return o;
  });
}

CheckReport check_trace_exp_monotone(const CheckConfig& cfg) {
  return run_trials(cfg, "trace_exp_monotone", "monotonicity of the trace exponential",
                    [&](std::size_t, std::uint64_t seed) {
    TrialOutcome o;
    const auto [c, d] = gen_psd_pair(cfg.m, cfg.p, seed, cfg.scale);
    const double lhs = tr(texp(d)), rhs = tr(texp(c));
    const double scale = largest({c.frobenius_norm(), d.frobenius_norm(), lhs, rhs});
    o.leq(lhs, rhs, scale);
    o.equality(tr(texp(d)), lhs, scale);
    return o;
  });
}

CheckReport check_golden_thompson(const CheckConfig& cfg) {
  return run_trials(cfg, "golden_thompson", "Golden-Thompson inequality",
                    [&](std::size_t, std::uint64_t seed) {
    TrialOutcome o;
    const Tensor3 c = gen_hermitian(cfg.m, cfg.p, derive_seed(seed, 1), cfg.scale);
    const Tensor3 d = gen_hermitian(cfg.m, cfg.p, derive_seed(seed, 2), cfg.scale);
    const Tensor3 ec = texp(c);
    const double lhs = tr(texp(c + d));
    const double rhs = tr(tprod(ec, texp(d)));
    const double scale = largest({c.frobenius_norm(), d.frobenius_norm(), lhs, rhs});
    o.leq(lhs, rhs, scale);
    if ((rhs - lhs) / (1.0 + scale) > 1e-12) o.count("strictly_positive");

    // D = O.
    o.equality(tr(texp(c)), tr(tprod(ec, texp(zero(cfg.m, cfg.m, cfg.p)))), scale);
    // Commuting pair.
    const auto [x, y] = gen_commuting_pair(cfg.m, cfg.p, derive_seed(seed, 3));
    const double cl = tr(texp(x + y)), cr = tr(tprod(texp(x), texp(y)));
    o.equality(cl, cr, largest({x.frobenius_norm(), y.frobenius_norm(), cl, cr}));
    return o;
  });
}

CheckReport check_pinching(const CheckConfig& cfg) {
  return run_trials(cfg, "pinching", "pinching map properties",
                    [&](std::size_t, std::uint64_t seed) {
    TrialOutcome o;
    const Tensor3 c = gen_clustered_hermitian(cfg.m, cfg.p, derive_seed(seed, 1), 3);
    const Tensor3 x = gen_tpsd(cfg.m, cfg.p, derive_seed(seed, 2), cfg.m);
    const auto proj = spectral_projectors(c);
    const Tensor3 px = pinch(proj, x);
    const double scale = largest({c.frobenius_norm(), x.frobenius_norm(), px.frobenius_norm()});
    // Commutes with C.
    o.slack(-(tprod(px, c) - tprod(c, px)).frobenius_norm() / (1.0 + scale));
    // Trace against C is preserved.
    const double t1 = tr(tprod(px, c)), t2 = tr(tprod(x, c));
    o.slack(-std::abs(t1 - t2) / (1.0 + largest({scale, t1, t2})));
    // P(X) >= X / |sp(C)|.
    const Tensor3 lower = (1.0 / static_cast<double>(proj.size())) * x;
    o.slack(min_eig(px - lower) / (1.0 + scale));
    o.count("clusters", static_cast<double>(proj.size()));

    // C = I: a single projector and P(X) = X.
    const auto id_proj = spectral_projectors(identity(cfg.m, cfg.p));
    o.equality(0.0, (pinch(id_proj, x) - x).frobenius_norm(), scale);
    return o;
  });
}

CheckReport check_jensen(const CheckConfig& cfg) {
  const auto fns = pick_functions(cfg, {"square", "inverse", "neglog", "xlogx"});
  auto report = run_trials(cfg, "jensen", "operator Jensen inequality", [&](std::size_t trial, std::uint64_t seed) {
    TrialOutcome o;
    const Index n = family_size(cfg, trial);
    const auto fam = gen_isometry_family(cfg.m, cfg.p, n, derive_seed(seed, 0));
    for (std::size_t fi = 0; fi < fns.size(); ++fi) {
      const auto& f = fns[fi];
      Tensor3 inner(cfg.m, cfg.m, cfg.p), rhs(cfg.m, cfg.m, cfg.p);
      double scale = 0.0;
      for (Index i = 0; i < n; ++i) {
        const auto s = derive_seed(seed, 100 * (fi + 1) + static_cast<std::uint64_t>(i));
        const Tensor3 xi = real_domain(f) ? gen_hermitian(cfg.m, cfg.p, s, cfg.scale) : gen_tpd(cfg.m, cfg.p, s, 0.2);
        const Tensor3& ci = fam.members[static_cast<std::size_t>(i)];
        const Tensor3 cih = herm_transpose(ci);
        inner += tprod(tprod(cih, xi), ci);
        rhs += tprod(tprod(cih, tfunc(xi, f)), ci);
        scale = std::max(scale, xi.frobenius_norm());
      }
      const Tensor3 lhs = tfunc(herm(inner), f);
      scale = largest({scale, lhs.frobenius_norm(), rhs.frobenius_norm()});
      o.slack(min_eig(rhs - lhs) / (1.0 + scale));

      // n = 1 with C_1 = I.
      const auto s = derive_seed(seed, 999 + fi);
      const Tensor3 x1 = real_domain(f) ? gen_hermitian(cfg.m, cfg.p, s, cfg.scale) : gen_tpd(cfg.m, cfg.p, s, 0.2);
      const Tensor3 id = identity(cfg.m, cfg.p);
      const Tensor3 l1 = tfunc(herm(tprod(tprod(id, x1), id)), f);
      const Tensor3 r1 = tprod(tprod(id, tfunc(x1, f)), id);
      o.equality(0.0, (l1 - r1).frobenius_norm(), largest({l1.frobenius_norm(), r1.frobenius_norm()}));
    }
    // Quadratic special case on a finite ensemble: (E C)^2 <= E C^2.
    Rng rng(derive_seed(seed, 7));
    const Index k = 3;
    std::vector<double> w(k);
    double total = 0.0;
    for (auto& wi : w) total += (wi = rng.uniform(0.1, 1.0));
    Tensor3 mean(cfg.m, cfg.m, cfg.p), second(cfg.m, cfg.m, cfg.p);
    double scale = 0.0;
    for (Index s = 0; s < k; ++s) {
      const Tensor3 cs = gen_hermitian(cfg.m, cfg.p, derive_seed(seed, 50 + s), cfg.scale);
      const double ws = w[static_cast<std::size_t>(s)] / total;
      mean += ws * cs;
      second += ws * herm(tprod(cs, cs));
      scale = std::max(scale, cs.frobenius_norm());
    }
    const Tensor3 sq = herm(tprod(mean, mean));
    o.slack(min_eig(second - sq) / (1.0 + largest({scale, second.frobenius_norm(), sq.frobenius_norm()})));
    return o;
  });
  return report;
}

CheckReport check_klein(const CheckConfig& cfg) {
  const auto fns = pick_functions(cfg, {"square", "exp", "xlogx"});
  return run_trials(cfg, "klein", "Klein inequality", [&](std::size_t, std::uint64_t seed) {
    TrialOutcome o;
    for (std::size_t fi = 0; fi < fns.size(); ++fi) {
      const auto& f = fns[fi];
      const auto s1 = derive_seed(seed, 2 * fi + 1), s2 = derive_seed(seed, 2 * fi + 2);
      const Tensor3 c = real_domain(f) ? gen_hermitian(cfg.m, cfg.p, s1, cfg.scale) : gen_tpd(cfg.m, cfg.p, s1, 0.2);
      const Tensor3 d = real_domain(f) ? gen_hermitian(cfg.m, cfg.p, s2, cfg.scale) : gen_tpd(cfg.m, cfg.p, s2, 0.2);
      const FunctionSpec df = derivative_of(f);
      const Tensor3 fc = tfunc(c, f), fd = tfunc(d, f), dfd = tfunc(d, df);
      const Tensor3 gap = fc - fd - tprod(c - d, dfd);
      const double val = tr(gap);
      const double scale = largest({c.frobenius_norm(), d.frobenius_norm(), tr(fc), tr(fd), tr(tprod(c - d, dfd))});
      o.slack(val / (1.0 + scale));
      if (f.strictly_convex) {
        const double bval = btr(gap);
        if (bval / (1.0 + largest({scale, btr(fc), btr(fd)})) < 1e-10 && (c - d).frobenius_norm() >= 1e-6) {
          o.slack(-1.0);
          o.count("strict_convexity_violations");
        }
      }
      // C = D.
      o.equality(0.0, tr(fd - fd - tprod(d - d, dfd)), scale);
    }
    return o;
  });
}

CheckReport check_log_order(const CheckConfig& cfg) {
  return run_trials(cfg, "log_order", "operator monotonicity and concavity of log",
                    [&](std::size_t, std::uint64_t seed) {
    TrialOutcome o;
    const auto [big, small] = gen_tpd_ordered_pair(cfg.m, cfg.p, seed);
    const Tensor3 lc = tlog(small), ld = tlog(big);
    const double scale = largest({big.frobenius_norm(), small.frobenius_norm(), lc.frobenius_norm(), ld.frobenius_norm()});
    o.slack(min_eig(ld - lc) / (1.0 + scale));
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const Tensor3 mix = tlog(t * small + (1.0 - t) * big);
      const Tensor3 chord = t * lc + (1.0 - t) * ld;
      o.slack(min_eig(mix - chord) / (1.0 + scale));
      // C = D: the concavity chord is exact.
      const Tensor3 same = tlog(t * small + (1.0 - t) * small);
      o.equality(0.0, (same - lc).frobenius_norm(), scale);
    }
    return o;
  });
}

namespace {

Tensor3 perspective_square(const Tensor3& x, const Tensor3& y) {
  const Tensor3 ratio = herm(tprod(x, tinverse(y)));
  return herm(tprod(tfunc(ratio, function_by_name("square")), y));
}

}  // namespace

CheckReport check_perspective(const CheckConfig& cfg) {
  return run_trials(cfg, "perspective", "joint convexity of the perspective of x^2",
                    [&](std::size_t, std::uint64_t seed) {
    TrialOutcome o;
    const auto q = gen_commuting_family(cfg.m, cfg.p, seed, 4, true);
    const Tensor3 &x1 = q[0], &y1 = q[1], &x2 = q[2], &y2 = q[3];
    const Tensor3 h1 = perspective_square(x1, y1), h2 = perspective_square(x2, y2);
    double scale = 0.0;
    for (const auto& t : q) scale = std::max(scale, t.frobenius_norm());
    scale = largest({scale, h1.frobenius_norm(), h2.frobenius_norm()});
    for (double t : kInteriorT) {
      const Tensor3 h = perspective_square(t * x1 + (1.0 - t) * x2, t * y1 + (1.0 - t) * y2);
      const Tensor3 chord = t * h1 + (1.0 - t) * h2;
      o.slack(min_eig(chord - h) / (1.0 + largest({scale, h.frobenius_norm()})));
      // Identical pairs.
      const Tensor3 he = perspective_square(t * x1 + (1.0 - t) * x1, t * y1 + (1.0 - t) * y1);
      o.equality(0.0, (he - h1).frobenius_norm(), scale);
    }
    return o;
  });
}

CheckReport check_joint_convexity(const CheckConfig& cfg) {
  return run_trials(cfg, "joint_convexity", "joint convexity of relative entropy",
                    [&](std::size_t, std::uint64_t seed) {
    TrialOutcome o;
    const Tensor3 a1 = gen_tpd(cfg.m, cfg.p, derive_seed(seed, 1), 0.2);
    const Tensor3 a2 = gen_tpd(cfg.m, cfg.p, derive_seed(seed, 2), 0.2);
    const Tensor3 b1 = gen_tpd(cfg.m, cfg.p, derive_seed(seed, 3), 0.2);
    const Tensor3 b2 = gen_tpd(cfg.m, cfg.p, derive_seed(seed, 4), 0.2);
    const double d1 = relative_entropy(a1, b1), d2 = relative_entropy(a2, b2);
    const double base = largest({a1.frobenius_norm(), a2.frobenius_norm(), b1.frobenius_norm(), b2.frobenius_norm(), d1, d2});
    for (double t : kInteriorT) {
      const double lhs = relative_entropy(t * a1 + (1.0 - t) * a2, t * b1 + (1.0 - t) * b2);
      const double rhs = t * d1 + (1.0 - t) * d2;
      o.leq(lhs, rhs, largest({base, lhs, rhs}));
      const double same = relative_entropy(t * a1 + (1.0 - t) * a1, t * b1 + (1.0 - t) * b1);
      o.equality(same, d1, base);
    }
    o.equality(0.0, relative_entropy(a1, a1), base);
    return o;
  });
}

CheckReport check_lieb(const CheckConfig& cfg) {
  return run_trials(cfg, "lieb", "Lieb concavity", [&](std::size_t, std::uint64_t seed) {
    TrialOutcome o;
    const Tensor3 h = gen_hermitian(cfg.m, cfg.p, derive_seed(seed, 1), cfg.scale);
    const Tensor3 a1 = gen_tpd(cfg.m, cfg.p, derive_seed(seed, 2), 0.2);
    const Tensor3 a2 = gen_tpd(cfg.m, cfg.p, derive_seed(seed, 3), 0.2);
    auto g = [](const Tensor3& hh, const Tensor3& x1, const Tensor3& x2, double t) {
      return tr(texp(hh + tlog(t * x1 + (1.0 - t) * x2)));
    };
    const double g0 = g(h, a1, a2, 0.0), g1 = g(h, a1, a2, 1.0);
    const Tensor3 z = zero(cfg.m, cfg.m, cfg.p);
    const double z0 = g(z, a1, a2, 0.0), z1 = g(z, a1, a2, 1.0);
    const double e0 = g(h, a1, a1, 0.0), e1 = g(h, a1, a1, 1.0);
    for (double t : kInteriorT) {
      const double gt = g(h, a1, a2, t);
      const double chord = t * g1 + (1.0 - t) * g0;
      const double scale = largest({h.frobenius_norm(), a1.frobenius_norm(), a2.frobenius_norm(), g0, g1, gt});
      o.leq(chord, gt, scale);
      // A_1 = A_2 and H = O.
      o.equality(g(h, a1, a1, t), t * e1 + (1.0 - t) * e0, scale);
      o.equality(g(z, a1, a2, t), t * z1 + (1.0 - t) * z0, scale);
    }
    return o;
  });
}

CheckReport check_variational(const CheckConfig& cfg) {
  return run_trials(cfg, "variational", "variational formula for the trace exponential",
                    [&](std::size_t, std::uint64_t seed) {
    TrialOutcome o;
    const Tensor3 h = gen_hermitian(cfg.m, cfg.p, derive_seed(seed, 1), cfg.scale);
    const Tensor3 a = gen_tpd(cfg.m, cfg.p, derive_seed(seed, 2), 0.2);
    const Tensor3 x = gen_tpd(cfg.m, cfg.p, derive_seed(seed, 3), 0.2);
    const Tensor3 opt = texp(h + tlog(a));
    const double value = tr(opt);
    auto objective = [&](const Tensor3& probe) {
      return tr(tprod(probe, h)) - relative_entropy(probe, a) + tr(probe);
    };
    const double probe = objective(x);
    const double scale = largest({h.frobenius_norm(), a.frobenius_norm(), x.frobenius_norm(), value, probe});
    o.leq(probe, value, scale);
    const double at_opt = objective(opt);
    o.equality(at_opt, value, largest({scale, at_opt, opt.frobenius_norm()}));
    return o;
  });
}

CheckReport check_cgf_trace_bound(const CheckConfig& cfg) {
  return run_trials(cfg, "cgf_trace_bound", "expected trace exponential bound through the cgf",
                    [&](std::size_t trial, std::uint64_t seed) {
    TrialOutcome o;
    const Tensor3 a = gen_hermitian(cfg.m, cfg.p, derive_seed(seed, 1), cfg.scale);
    // Rademacher +-B on even trials, a three-point law on odd ones.
    std::vector<std::pair<double, Tensor3>> law;
    if (trial % 2 == 0) {
      const Tensor3 b = gen_hermitian(cfg.m, cfg.p, derive_seed(seed, 2), cfg.scale);
      law = {{0.5, b}, {0.5, -b}};
    } else {
      law = {{0.2, gen_hermitian(cfg.m, cfg.p, derive_seed(seed, 3), cfg.scale)},
             {0.3, gen_hermitian(cfg.m, cfg.p, derive_seed(seed, 4), cfg.scale)},
             {0.5, gen_hermitian(cfg.m, cfg.p, derive_seed(seed, 5), cfg.scale)}};
    }
    double lhs = 0.0, scale = a.frobenius_norm();
    Tensor3 mgf(cfg.m, cfg.m, cfg.p);
    for (const auto& [w, x] : law) {
      lhs += w * tr(texp(a + x));
      mgf += w * texp(x);
      scale = std::max(scale, x.frobenius_norm());
    }
    const double rhs = tr(texp(a + tlog(herm(mgf))));
    o.leq(lhs, rhs, largest({scale, lhs, rhs}));
    // Deterministic X.
    const Tensor3& x0 = law.front().second;
    const double dl = tr(texp(a + x0)), dr = tr(texp(a + tlog(texp(x0))));
    o.equality(dl, dr, largest({scale, dl, dr}));
    return o;
  });
}

CheckReport check_expectation_order(const CheckConfig& cfg) {
  return run_trials(cfg, "expectation_order", "expectation preserves the semidefinite order",
                    [&](std::size_t, std::uint64_t seed) {
    TrialOutcome o;
    Rng rng(derive_seed(seed, 0));
    const Index k = 3;
    Tensor3 ex(cfg.m, cfg.m, cfg.p), ey(cfg.m, cfg.m, cfg.p);
    std::vector<double> w(k);
    double total = 0.0;
    for (auto& wi : w) total += (wi = rng.uniform(0.1, 1.0));
    double scale = 0.0;
    for (Index s = 0; s < k; ++s) {
      const auto [y, x] = gen_psd_pair(cfg.m, cfg.p, derive_seed(seed, 1 + s), cfg.scale);
      ex += (w[static_cast<std::size_t>(s)] / total) * x;
      ey += (w[static_cast<std::size_t>(s)] / total) * y;
      scale = std::max({scale, x.frobenius_norm(), y.frobenius_norm()});
    }
    o.slack(min_eig(ey - ex) / (1.0 + scale));
    return o;
  });
}

CheckReport check_eigentuple_residual(const CheckConfig& cfg) {
  return run_trials(cfg, "eigentuple_residual", "eigentuple equation C * X = d o X",
                    [&](std::size_t trial, std::uint64_t seed) {
    TrialOutcome o;
    const Tensor3 c = trial % 2 == 0 ? gen_hermitian(cfg.m, cfg.p, seed, cfg.scale)
                                     : gen_complex_hermitian(cfg.m, cfg.p, seed, cfg.scale);
    const Spectrum s = herm_spectrum(c);
    for (Index j = 0; j < cfg.m; ++j) {
      const auto& x = s.tuple_eigenmatrices[static_cast<std::size_t>(j)];
      const auto& d = s.eigentuples[static_cast<std::size_t>(j)];
      const double res = (tensor_times_matrix(c, x).matrix() - dprod(d, x).matrix()).norm();
      o.slack(-res / (1.0 + c.frobenius_norm()));
    }
    return o;
  });
}

CheckReport check_tpsd_predicates(const CheckConfig& cfg) {
  auto r = run_trials(cfg, "tpsd_predicates", "definiteness by spectrum versus by smallest eigentuple",
                      [&](std::size_t, std::uint64_t seed) {
    TrialOutcome o;
    Rng rng(derive_seed(seed, 0));
    Tensor3 c = gen_hermitian(cfg.m, cfg.p, derive_seed(seed, 1), cfg.scale);
    // Shift so that roughly half the instances are definite.
    const double shift = -min_eig(c) + rng.uniform(-0.3, 0.3) * cfg.scale;
    c += shift * identity(cfg.m, cfg.p);
    const bool by_spectrum = is_tpsd(c);
    const bool by_tuple = is_tpsd_eigentuple(c);
    if (by_spectrum) o.count("tpsd");
    if (by_spectrum != by_tuple) o.count(by_spectrum ? "disagree_tuple_negative" : "disagree_tuple_nonnegative");
    o.slack(0.0);
    return o;
  });
  r.note = "informational: counts disagreements between the two definiteness predicates";
  return r;
}

}  // namespace tprod
