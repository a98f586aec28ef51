#include "delegation/verify.hpp"
#include "delegation/bias_analysis.hpp"
#include "delegation/errors.hpp"
#include "delegation/numerics.hpp"
#include "delegation/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

namespace delegation {

namespace {

struct Suite {
    std::vector<CheckResult> checks;

    template <typename F>
    void run(const std::string& name, F&& f) {
        try {
            std::string detail;
            const bool ok = f(detail);
            checks.push_back({name, ok, detail});
        } catch (const std::exception& e) {
            checks.push_back({name, false, std::string("exception: ") + e.what()});
        }
    }
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

// Deterministic random canonical sets inside the relevant decision range.
std::vector<DelegationSet> random_sets(const DecisionSetting& setting, int count,
                                       uint64_t seed) {
    std::mt19937_64 rng(seed);
    const double lo = setting.y_A(setting.theta_lo()) - 0.1;
    const double hi = setting.y_A(setting.theta_hi()) + 0.5;
    std::uniform_real_distribution<double> point(lo, hi);
    std::uniform_int_distribution<int> pieces(1, 4);
    std::vector<DelegationSet> sets;
    sets.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        const int k = pieces(rng);
        std::vector<std::pair<double, double>> raw;
        for (int p = 0; p < k; ++p) {
            double a = point(rng), b = point(rng);
            if (a > b) std::swap(a, b);
            raw.emplace_back(a, b);
        }
        sets.push_back(DelegationSet::make(raw));
    }
    return sets;
}

StateDistribution decreasing_density_distribution() {
    // pdf 2(1 - theta) on [0, 1]: decays fast enough to break A1 for any
    // constant bias near the top of the support.
    StateDistribution d;
    d.support_lo = 0.0;
    d.support_hi = 1.0;
    d.cdf = [](double t) { return t * (2.0 - t); };
    d.pdf = [](double t) { return 2.0 * (1.0 - t); };
    d.pdf_derivative = [](double) { return -2.0; };
    d.name = "decreasing";
    d.polynomial_pdf = true;
    d.validate();
    return d;
}

DecisionSetting quartic_setting(double beta) {
    return DecisionSetting(
        uniform_distribution(0.0, 1.0),
        PayoffKernel::custom([](double y) { return -0.25 * y * y * y * y; },
                             [](double y) { return -y * y * y; },
                             [](double y) { return -3.0 * y * y; }, "quartic"),
        BiasFunction::constant_bias(beta));
}

bool weakly_decreasing(const std::vector<double>& v, double tol) {
    for (size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i + 1] > v[i] + tol) return false;
    return true;
}

bool strictly_increasing(const std::vector<double>& v) {
    for (size_t i = 0; i + 1 < v.size(); ++i)
        if (!(v[i + 1] > v[i])) return false;
    return true;
}

size_t argmax_index(const std::vector<double>& v) {
    return static_cast<size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

// ---------------------------------------------------------------------------
// model_core

std::vector<CheckResult> suite_model_core() {
    Suite s;
    const DecisionSetting affine(uniform_distribution(0.0, 1.0),
                                 PayoffKernel::quadratic_generic(),
                                 BiasFunction::custom(
                                     [](double t) { return 0.2 * (t - 0.4); },
                                     [](double) { return 0.2; }, "affine"));

    s.run("y_A strictly increasing on grid", [&](std::string& detail) {
        double prev = -1e300;
        for (double t : num::linspace(0.0, 1.0, 501)) {
            const double y = affine.y_A(t);
            if (y <= prev) {
                detail = "non-monotone at theta=" + fmt(t);
                return false;
            }
            prev = y;
        }
        return true;
    });

    s.run("sign(y_A - y_P) matches sign(b)", [&](std::string& detail) {
        for (double t : num::linspace(0.0, 1.0, 501)) {
            const double b = 0.2 * (t - 0.4);
            const double diff = affine.y_A(t) - affine.y_P(t);
            if (b > 1e-12 && diff <= 0.0) { detail = "theta=" + fmt(t); return false; }
            if (b < -1e-12 && diff >= 0.0) { detail = "theta=" + fmt(t); return false; }
        }
        return true;
    });

    s.run("A1 equivalent to min f'/f > -1/beta under constant bias",
          [&](std::string& detail) {
              const double beta = 0.3;
              for (const auto& dist : {uniform_distribution(0.0, 1.0),
                                       power_distribution(2.0, 0.0, 1.0),
                                       decreasing_density_distribution()}) {
                  const DecisionSetting setting(dist, PayoffKernel::quadratic_generic(),
                                                BiasFunction::constant_bias(beta));
                  const bool a1 = setting.check_assumptions().a1.pass;
                  double min_ratio = 1e300;
                  for (int i = 1; i < 2000; ++i) {
                      const double t = static_cast<double>(i) / 2000.0;
                      const double f = dist.pdf(t);
                      if (f > 1e-12)
                          min_ratio = std::min(min_ratio, dist.pdf_prime(t) / f);
                  }
                  const bool alt = min_ratio > -1.0 / beta;
                  if (a1 != alt) {
                      detail = dist.name + ": A1=" + (a1 ? "pass" : "fail") +
                               " but min f'/f = " + fmt(min_ratio);
                      return false;
                  }
              }
              return true;
          });

    s.run("expectation of the constant 1 reproduces 1 within 1e-10",
          [&](std::string& detail) {
              for (const auto& dist : {uniform_distribution(0.0, 1.0),
                                       power_distribution(2.0, 0.0, 1.0),
                                       decreasing_density_distribution()}) {
                  const double mass = dist.expectation([](double) { return 1.0; });
                  if (std::fabs(mass - 1.0) > 1e-10) {
                      detail = dist.name + " mass " + fmt(mass);
                      return false;
                  }
              }
              return true;
          });

    return s.checks;
}

// ---------------------------------------------------------------------------
// delegation sets

std::vector<CheckResult> suite_sets() {
    Suite s;
    const DecisionSetting uqc = uqc_setting(0.3);
    const DecisionSetting quartic = quartic_setting(0.1);

    s.run("conjugate involution within 1e-8", [&](std::string& detail) {
        for (const DecisionSetting* st : {&uqc, &quartic}) {
            for (double y : num::linspace(st->y_A(st->theta_lo()) - 0.2,
                                          st->y_A(st->theta_hi()) + 0.2, 41)) {
                const double c1 = ex_ante_conjugate(*st, y);
                if (std::fabs(ex_ante_conjugate(*st, c1) - y) > 1e-8) {
                    detail = "ex ante at y=" + fmt(y);
                    return false;
                }
                const double theta = 0.5 * (st->theta_lo() + st->theta_hi());
                const double c2 = theta_conjugate(*st, theta, y);
                if (std::fabs(theta_conjugate(*st, theta, c2) - y) > 1e-8) {
                    detail = "theta-conjugate at y=" + fmt(y);
                    return false;
                }
            }
        }
        return true;
    });

    s.run("conjugate payoff equality within 1e-8", [&](std::string& detail) {
        for (const DecisionSetting* st : {&uqc, &quartic}) {
            for (double y : num::linspace(st->y_A(st->theta_lo()) - 0.2,
                                          st->y_A(st->theta_hi()) + 0.2, 41)) {
                const double c = ex_ante_conjugate(*st, y);
                if (std::fabs(st->mean_u_A(y) - st->mean_u_A(c)) > 1e-8) {
                    detail = "y=" + fmt(y);
                    return false;
                }
            }
        }
        return true;
    });

    s.run("quadratic ex ante conjugate is the exact reflection",
          [&](std::string& detail) {
              for (double y : num::linspace(-0.5, 2.0, 26)) {
                  const double c = ex_ante_conjugate(uqc, y);
                  if (std::fabs(c - (2.0 * uqc.y_A0() - y)) > 1e-12) {
                      detail = "y=" + fmt(y);
                      return false;
                  }
              }
              return true;
          });

    s.run("minimalize idempotent and payoff-equivalent within 1e-8",
          [&](std::string& detail) {
              const CostModel cost = CostModel::szalay(0.05);
              for (const DecisionSetting* st : {&uqc, &quartic}) {
                  const int count = st == &uqc ? 60 : 20;
                  for (const auto& D : random_sets(*st, count, 2024)) {
                      const DelegationSet M = minimalize(*st, D);
                      if (!(minimalize(*st, M) == M)) {
                          detail = "not idempotent";
                          return false;
                      }
                      const Evaluation a = evaluate(*st, cost, D);
                      const Evaluation b = evaluate(*st, cost, M);
                      if (std::fabs(a.agent.uninformed_payoff -
                                    b.agent.uninformed_payoff) > 1e-8 ||
                          std::fabs(a.agent.informed_payoff -
                                    b.agent.informed_payoff) > 1e-8 ||
                          std::fabs(a.agent.info_gain - b.agent.info_gain) > 1e-8 ||
                          std::fabs(a.U_P - b.U_P) > 1e-8) {
                          detail = "payoffs differ after minimalize";
                          return false;
                      }
                  }
              }
              return true;
          });

    return s.checks;
}

// ---------------------------------------------------------------------------
// agent

std::vector<CheckResult> suite_agent() {
    Suite s;
    const CostModel cost = CostModel::szalay(0.05);

    s.run("set inclusion raises both agent payoffs", [&](std::string& detail) {
        const DecisionSetting uqc = uqc_setting(0.3);
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> point(0.2, 1.5);
        for (int i = 0; i < 40; ++i) {
            double a = point(rng), b = point(rng), c = point(rng), d = point(rng);
            if (a > b) std::swap(a, b);
            if (c > d) std::swap(c, d);
            const DelegationSet small = DelegationSet::make({{a, b}});
            const DelegationSet big = DelegationSet::make({{a, b}, {c, d}});
            const AgentResponse rs = agent_response(uqc, cost, small);
            const AgentResponse rb = agent_response(uqc, cost, big);
            if (rs.uninformed_payoff > rb.uninformed_payoff + 1e-10 ||
                rs.informed_payoff > rb.informed_payoff + 1e-10) {
                detail = "subset payoff exceeded superset";
                return false;
            }
        }
        return true;
    });

    s.run("info gain nonnegative on random sets", [&](std::string& detail) {
        const DecisionSetting uqc = uqc_setting(0.2);
        for (const auto& D : random_sets(uqc, 80, 99)) {
            if (agent_response(uqc, cost, D).info_gain < -1e-10) {
                detail = "negative info gain";
                return false;
            }
        }
        return true;
    });

    s.run("informed choice nondecreasing in theta", [&](std::string& detail) {
        const DecisionSetting uqc = uqc_setting(0.3);
        for (const auto& D : random_sets(uqc, 25, 123)) {
            double prev = -1e300;
            for (double t : num::linspace(0.0, 1.0, 201)) {
                const double y = informed_choice(uqc, D, t);
                if (y < prev - 1e-9) {
                    detail = "choice decreased at theta=" + fmt(t);
                    return false;
                }
                prev = std::max(prev, y);
            }
        }
        return true;
    });

    s.run("effort_of_gain strictly increasing and inverse of c'",
          [&](std::string& detail) {
              for (const CostModel& cm :
                   {CostModel::szalay(0.02), CostModel::szalay(0.2),
                    CostModel::near_step(0.01, 0.02, 1e-4)}) {
                  double prev = -1.0;
                  for (double x : num::linspace(1e-4, 0.5, 30)) {
                      const double e = effort_of_gain(cm, x);
                      const double sat =
                          (cm.kind == CostKind::NearStepLogistic ? cm.eps : 1.0) *
                          (1.0 - 1e-9);
                      // Strict increase until the response saturates to the
                      // top of its range at machine precision.
                      if (e <= prev && prev < sat) {
                          detail = cm.name + " not increasing at x=" + fmt(x);
                          return false;
                      }
                      if (e < prev) {
                          detail = cm.name + " decreased at x=" + fmt(x);
                          return false;
                      }
                      prev = e;
                      // The inverse is ill-conditioned where effort saturates
                      // (1 - e below 1e-7 loses digits to the representation).
                      const double top =
                          cm.kind == CostKind::NearStepLogistic ? cm.eps : 1.0;
                      if (e > 1e-12 && e < top * (1.0 - 1e-7)) {
                          if (std::fabs(cm.c_prime(e) - x) > 1e-9) {
                              detail = cm.name + " roundtrip failed at x=" + fmt(x);
                              return false;
                          }
                      }
                  }
              }
              return true;
          });

    // Information-gain comparative statics per family.
    for (double beta : {0.1, 0.3, 0.45}) {
        const DecisionSetting st = uqc_setting(beta);
        const double ya_lo = st.y_A(st.theta_lo());
        const double ya_hi = st.y_A(st.theta_hi());
        const double y_A0 = st.y_A0();

        s.run("interval info gain strictly increasing in cap (beta=" + fmt(beta) + ")",
              [&, beta](std::string& detail) {
                  std::vector<double> v;
                  for (double y0 : num::linspace(ya_lo + 1e-6, ya_hi - 1e-6, 50))
                      v.push_back(
                          agent_response(st, cost, DelegationSet::interval(ya_lo, y0))
                              .info_gain);
                  if (!strictly_increasing(v)) {
                      detail = "not strictly increasing";
                      return false;
                  }
                  return true;
              });

        s.run("hollow info gain increasing in radius and cap (beta=" + fmt(beta) + ")",
              [&, beta](std::string& detail) {
                  std::vector<double> by_radius;
                  const double r_max = y_A0 - ya_lo;
                  for (double r : num::linspace(1e-4, r_max - 1e-6, 50)) {
                      const double y0 = y_A0 - r;
                      const double y1 = ex_ante_conjugate(st, y0);
                      by_radius.push_back(
                          agent_response(st, cost,
                                         DelegationSet::make({{ya_lo, y0}, {y1, ya_hi}}))
                              .info_gain);
                  }
                  if (!strictly_increasing(by_radius)) {
                      detail = "not increasing in radius";
                      return false;
                  }
                  const double y0 = y_A0 - 0.5 * r_max;
                  const double y1 = ex_ante_conjugate(st, y0);
                  std::vector<double> by_cap;
                  for (double y2 : num::linspace(y1 + 1e-6, ya_hi, 50))
                      by_cap.push_back(
                          agent_response(st, cost,
                                         DelegationSet::make({{ya_lo, y0}, {y1, y2}}))
                              .info_gain);
                  if (!strictly_increasing(by_cap)) {
                      detail = "not increasing in cap";
                      return false;
                  }
                  return true;
              });

        s.run("high-point info gain decreasing in ybar, convex in y0 (beta=" +
                  fmt(beta) + ")",
              [&, beta](std::string& detail) {
                  const double y0_mid = 0.5 * (ya_lo + y_A0);
                  const double bar_hi = theta_conjugate(st, st.theta_hi(), y0_mid);
                  std::vector<double> by_bar;
                  for (double yb : num::linspace(ya_hi + 1e-4, bar_hi - 1e-4, 50))
                      by_bar.push_back(agent_response(
                                           st, cost,
                                           DelegationSet::make({{ya_lo, y0_mid},
                                                                {yb, yb}}))
                                           .info_gain);
                  for (size_t i = 0; i + 1 < by_bar.size(); ++i)
                      if (!(by_bar[i + 1] < by_bar[i])) {
                          detail = "not decreasing in ybar";
                          return false;
                      }
                  const double ybar = ya_hi + 0.25 * (bar_hi - ya_hi);
                  std::vector<double> by_y0;
                  for (double y0 : num::linspace(ya_lo + 1e-4, y_A0 - 1e-4, 50))
                      by_y0.push_back(
                          agent_response(st, cost,
                                         DelegationSet::make({{ya_lo, y0}, {ybar, ybar}}))
                              .info_gain);
                  for (size_t i = 1; i + 1 < by_y0.size(); ++i) {
                      const double second_diff =
                          by_y0[i + 1] - 2.0 * by_y0[i] + by_y0[i - 1];
                      if (second_diff < -1e-10) {
                          detail = "second difference " + fmt(second_diff);
                          return false;
                      }
                  }
                  return true;
              });
    }

    return s.checks;
}

// ---------------------------------------------------------------------------
// principal

std::vector<CheckResult> suite_principal() {
    Suite s;
    const CostModel cost = CostModel::szalay(0.05);

    s.run("envelope identity on 200 random sets (generic UQC)",
          [&](std::string& detail) {
              for (double beta : {0.1, 0.3}) {
                  const DecisionSetting st = uqc_setting(beta, Normalization::Generic);
                  for (const auto& D : random_sets(st, 100, 4242)) {
                      const double direct =
                          integrate_rule(st, informed_rule(st, D)).u_P1;
                      const double env = informed_payoff_envelope(st, D);
                      if (std::fabs(env - direct) > 1e-6) {
                          detail = "beta=" + fmt(beta) + " err=" + fmt(env - direct);
                          return false;
                      }
                  }
              }
              return true;
          });

    s.run("benchmark interval beats every other interval cap (400-point grid)",
          [&](std::string& detail) {
              for (double beta : {0.1, 0.3}) {
                  const DecisionSetting st = uqc_setting(beta);
                  const Benchmark bench = informed_benchmark(st);
                  const double ya_lo = st.y_A(st.theta_lo());
                  for (double y : num::linspace(ya_lo + 1e-6,
                                                st.y_A(st.theta_hi()), 400)) {
                      const double u =
                          integrate_rule(
                              st, informed_rule(st, DelegationSet::interval(ya_lo, y)))
                              .u_P1;
                      if (u > bench.value + 1e-9) {
                          detail = "cap " + fmt(y) + " beats the benchmark";
                          return false;
                      }
                  }
              }
              return true;
          });

    for (double beta : {0.1, 0.3, 0.45}) {
        s.run("informed-payoff comparative statics per family (beta=" + fmt(beta) + ")",
              [&, beta](std::string& detail) {
                  const DecisionSetting st = uqc_setting(beta);
                  const double ya_lo = st.y_A(st.theta_lo());
                  const double ya_hi = st.y_A(st.theta_hi());
                  const double y_A0 = st.y_A0();
                  const Benchmark bench = informed_benchmark(st);
                  auto u_P1_of = [&](const DelegationSet& D) {
                      return integrate_rule(st, informed_rule(st, D)).u_P1;
                  };

                  // Hollow: decreasing in the gap radius; single-peaked in the
                  // cap about y_A(theta_hat) clamped into the feasible range.
                  std::vector<double> by_radius;
                  const double r_max = y_A0 - ya_lo;
                  for (double r : num::linspace(1e-4, r_max - 1e-6, 50)) {
                      const double y0 = y_A0 - r;
                      const double y1 = ex_ante_conjugate(st, y0);
                      by_radius.push_back(
                          u_P1_of(DelegationSet::make({{ya_lo, y0}, {y1, ya_hi}})));
                  }
                  for (size_t i = 0; i + 1 < by_radius.size(); ++i)
                      if (!(by_radius[i + 1] < by_radius[i] + 1e-12)) {
                          detail = "hollow u_P1 not decreasing in radius";
                          return false;
                      }

                  const double y0 = y_A0 - 0.4 * r_max;
                  const double y1 = ex_ante_conjugate(st, y0);
                  std::vector<double> caps = num::linspace(y1, ya_hi, 50);
                  std::vector<double> by_cap;
                  for (double y2 : caps)
                      by_cap.push_back(
                          u_P1_of(DelegationSet::make({{ya_lo, y0}, {y1, y2}})));
                  const double peak =
                      std::clamp(bench.cap, caps.front(), caps.back());
                  const size_t arg = argmax_index(by_cap);
                  const double step = caps[1] - caps[0];
                  if (std::fabs(caps[arg] - peak) > step + 1e-9) {
                      detail = "hollow cap argmax " + fmt(caps[arg]) +
                               " not within one step of " + fmt(peak);
                      return false;
                  }

                  // Interval: single-peaked about the benchmark cap.
                  std::vector<double> icaps =
                      num::linspace(ya_lo + 1e-6, ya_hi, 50);
                  std::vector<double> by_icap;
                  for (double y : icaps)
                      by_icap.push_back(u_P1_of(DelegationSet::interval(ya_lo, y)));
                  const size_t iarg = argmax_index(by_icap);
                  if (std::fabs(icaps[iarg] - bench.cap) >
                      (icaps[1] - icaps[0]) + 1e-9) {
                      detail = "interval cap argmax " + fmt(icaps[iarg]) +
                               " not within one step of " + fmt(bench.cap);
                      return false;
                  }

                  // High point: increasing in y0; quasiconvex in ybar (no
                  // strict interior local max).
                  const double ybar = ya_hi + 0.3 * (ya_hi - ya_lo);
                  std::vector<double> by_y0;
                  for (double v : num::linspace(ya_lo + 1e-4, y_A0 - 1e-4, 50))
                      by_y0.push_back(
                          u_P1_of(DelegationSet::make({{ya_lo, v}, {ybar, ybar}})));
                  for (size_t i = 0; i + 1 < by_y0.size(); ++i)
                      if (!(by_y0[i + 1] > by_y0[i] - 1e-12)) {
                          detail = "high-point u_P1 not increasing in y0";
                          return false;
                      }
                  const double y0h = 0.5 * (ya_lo + y_A0);
                  const double bar_hi = theta_conjugate(st, st.theta_hi(), y0h);
                  std::vector<double> by_bar;
                  for (double yb : num::linspace(ya_hi + 1e-4, bar_hi - 1e-4, 50))
                      by_bar.push_back(
                          u_P1_of(DelegationSet::make({{ya_lo, y0h}, {yb, yb}})));
                  for (size_t i = 1; i + 1 < by_bar.size(); ++i)
                      if (by_bar[i] > by_bar[i - 1] + 1e-12 &&
                          by_bar[i] > by_bar[i + 1] + 1e-12) {
                          detail = "strict interior local max in ybar";
                          return false;
                      }
                  return true;
              });
    }

    s.run("adding the conjugate point: sign matches the bias regime",
          [&](std::string& detail) {
              for (double beta : {0.1, 0.2, 0.3, 0.45}) {
                  const DecisionSetting st = uqc_setting(beta);
                  const Benchmark bench = informed_benchmark(st);
                  const double regime_sign =
                      st.g(bench.theta_hat) - st.mean_g(); // >0: low bias
                  const double ya_lo = st.y_A(st.theta_lo());
                  for (double y0 : num::linspace(ya_lo + 0.02, st.y_A0() - 0.02, 12)) {
                      const double y1 = ex_ante_conjugate(st, y0);
                      const DelegationSet base =
                          DelegationSet::make({{std::min(ya_lo, y0), y0}});
                      const DelegationSet with =
                          DelegationSet::make({{std::min(ya_lo, y0), y0}, {y1, y1}});
                      const double diff =
                          integrate_rule(st, informed_rule(st, with)).u_P1 -
                          integrate_rule(st, informed_rule(st, base)).u_P1;
                      if (regime_sign > 1e-9 && diff < -1e-12) {
                          detail = "beta=" + fmt(beta) + ": point hurts in low bias";
                          return false;
                      }
                      if (regime_sign < -1e-9 && diff > 1e-12) {
                          detail = "beta=" + fmt(beta) + ": point helps in high bias";
                          return false;
                      }
                  }
              }
              return true;
          });

    return s.checks;
}

// ---------------------------------------------------------------------------
// optimizer

std::vector<CheckResult> suite_optimizer(int jobs) {
    Suite s;

    s.run("solve respects the gap characterization and bounds",
          [&](std::string& detail) {
              const struct {
                  double beta, kappa;
              } cells[] = {{0.1, 0.02}, {0.3, 0.05}, {0.45, 0.05}};
              for (const auto& cell : cells) {
                  const DecisionSetting st = uqc_setting(cell.beta);
                  const CostModel cost = CostModel::szalay(cell.kappa);
                  const SolveResult res = solve(st, cost);
                  const Benchmark bench = informed_benchmark(st);

                  if (res.evaluation.U_P > bench.value + 1e-9) {
                      detail = "solve value above the informed-agent bound";
                      return false;
                  }
                  const double guard = res.singleton_guard_U_P;
                  const double bench_U = evaluate(st, cost, bench.interval).U_P;
                  if (res.evaluation.U_P < guard - 1e-9 ||
                      res.evaluation.U_P < bench_U - 1e-9) {
                      detail = "solve value below a feasible candidate";
                      return false;
                  }
                  for (const auto& gap : res.best_set.gaps()) {
                      if (!(gap.d1 < st.y_A0() && st.y_A0() < gap.d2)) {
                          detail = "gap misses y_A0 at beta=" + fmt(cell.beta);
                          return false;
                      }
                      const double diff =
                          st.mean_u_A(gap.d1) - st.mean_u_A(gap.d2);
                      const bool indiff = std::fabs(diff) <= 1e-6;
                      const bool high =
                          diff > 0.0 && gap.d2 > st.y_A(st.theta_hi());
                      if (!indiff && !high) {
                          detail = "gap violates the endpoint condition";
                          return false;
                      }
                  }
                  if (res.classification == "hollow" &&
                      !(res.best_form.y2 > bench.cap - 1e-4)) {
                      detail = "hollow cap not above the benchmark cap";
                      return false;
                  }
              }
              return true;
          });

    s.run("regime flags are mutually exclusive across the bias grid",
          [&](std::string& detail) {
              for (double beta : num::linspace(0.05, 0.45, 9)) {
                  const DecisionSetting st = uqc_setting(beta);
                  const Benchmark bench = informed_benchmark(st);
                  const bool low = st.mean_g() <= st.g(bench.theta_hat);
                  const double u_single =
                      integrate_rule(st, informed_rule(st, DelegationSet::point(
                                                               st.y_P0())))
                          .u_P1;
                  const double u_fav =
                      integrate_rule(
                          st, informed_rule(st, DelegationSet::interval(
                                                    st.y_A(st.theta_lo()), st.y_A0())))
                          .u_P1;
                  const bool very_high = u_single >= u_fav;
                  if (low && very_high) {
                      detail = "both flags at beta=" + fmt(beta);
                      return false;
                  }
              }
              return true;
          });

    s.run("hollow region shrinks along kappa=0.02 (coarse sweep)",
          [&](std::string& detail) {
              std::vector<double> betas;
              for (double b = 0.02; b < 0.481; b += 0.02) betas.push_back(b);
              const auto cells = regime_map(betas, {0.02}, 200, jobs);
              std::vector<double> widths;
              int transition = -1;
              for (size_t i = 0; i < cells.size(); ++i) {
                  if (cells[i].form == "hollow" || cells[i].form == "hollow_singleton")
                      widths.push_back(cells[i].y2_or_ybar - cells[i].y1);
                  else if (transition < 0)
                      transition = static_cast<int>(i);
              }
              if (widths.empty() || transition <= 0) {
                  detail = "sweep lacks a hollow-to-interval transition";
                  return false;
              }
              if (!weakly_decreasing(widths, 1e-3)) {
                  detail = "upper-interval width not weakly decreasing";
                  return false;
              }
              const auto& last_hollow = cells[static_cast<size_t>(transition) - 1];
              const auto& first_other = cells[static_cast<size_t>(transition)];
              if (!(first_other.effort < last_hollow.effort)) {
                  detail = "effort did not drop at the transition";
                  return false;
              }
              const auto u_P0_of = [](const RegimeCell& c) {
                  // u_P0 = (U_P - e u_P1)/(1 - e) is not in the cell; recompute.
                  const DecisionSetting st = uqc_setting(c.beta);
                  const SolveResult r = solve(st, CostModel::szalay(c.kappa));
                  return r.evaluation.u_P0;
              };
              if (!(u_P0_of(first_other) > u_P0_of(last_hollow))) {
                  detail = "u_P0 did not rise at the transition";
                  return false;
              }
              return true;
          });

    return s.checks;
}

// ---------------------------------------------------------------------------
// bias analysis

std::vector<CheckResult> suite_bias(int jobs) {
    Suite s;
    (void)jobs;

    s.run("Szalay condition: holds iff kappa <= 1/12 (built-in cost)",
          [&](std::string& detail) {
              if (!szalay_condition(CostModel::szalay(0.05)).holds) {
                  detail = "kappa=0.05 should satisfy the condition";
                  return false;
              }
              if (szalay_condition(CostModel::szalay(0.2)).holds) {
                  detail = "kappa=0.2 should fail the condition";
                  return false;
              }
              const SzalayCondition at_boundary =
                  szalay_condition(CostModel::szalay(1.0 / 12.0));
              if (at_boundary.holds || !at_boundary.boundary) {
                  detail = "kappa=1/12 should sit on the boundary and report false";
                  return false;
              }
              return true;
          });

    s.run("unbiased optimum keeps a gap when the condition holds",
          [&](std::string& detail) {
              const UnbiasedOptimum opt = unbiased_optimum(CostModel::szalay(0.05));
              if (!(opt.radius > 1e-4)) {
                  detail = "radius " + fmt(opt.radius);
                  return false;
              }
              return true;
          });

    s.run("shifted sets keep the information gain and effort (1e-9)",
          [&](std::string& detail) {
              const TranslationBound rep = translation_bound_check(0.05, 0.02);
              if (!rep.applicable || !rep.shift_invariant) {
                  detail = "shift invariance failed";
                  return false;
              }
              return true;
          });

    s.run("small bias strictly helps and the translation bound holds",
          [&](std::string& detail) {
              const CostModel cost = CostModel::szalay(0.05);
              const UnbiasedOptimum base = unbiased_optimum(cost);
              for (double beta : {0.005, 0.01, 0.02}) {
                  const TranslationBound rep = translation_bound_check(0.05, beta);
                  if (!(rep.V_beta > rep.V0)) {
                      detail = "V(beta) <= V(0) at beta=" + fmt(beta);
                      return false;
                  }
                  if (!rep.bound_holds) {
                      detail = "translation bound failed at beta=" + fmt(beta);
                      return false;
                  }
                  // The shifted set is always feasible.
                  std::vector<std::pair<double, double>> shifted;
                  for (const auto& iv : base.set.intervals())
                      shifted.emplace_back(iv.lo + beta, iv.hi + beta);
                  const double shifted_value =
                      evaluate(uqc_setting(beta), cost, DelegationSet::make(shifted))
                          .U_P;
                  if (rep.V_beta < shifted_value - 1e-9) {
                      detail = "V(beta) below the shifted-set payoff";
                      return false;
                  }
              }
              return true;
          });

    return s.checks;
}

// ---------------------------------------------------------------------------
// oracle

std::vector<CheckResult> suite_oracle(int jobs) {
    Suite s;
    const DecisionSetting st = uqc_setting(0.1);
    const CostModel cost = CostModel::szalay(0.02);

    s.run("denser grids never lower the oracle optimum", [&](std::string& detail) {
        const auto coarse = enumerate_best(st, cost, default_oracle_grid(st, 6), jobs);
        const auto fine = enumerate_best(st, cost, default_oracle_grid(st, 11), jobs);
        if (fine.best_value < coarse.best_value - 1e-12) {
            detail = "best value dropped on the refinement";
            return false;
        }
        return true;
    });

    s.run("oracle optimum approaches the parametric optimum from below",
          [&](std::string& detail) {
              const SolveResult sol = solve(st, cost);
              const auto m6 = enumerate_best(st, cost, default_oracle_grid(st, 6), jobs);
              const auto m12 =
                  enumerate_best(st, cost, default_oracle_grid(st, 12), jobs);
              if (m6.best_value > sol.evaluation.U_P + 1e-6 ||
                  m12.best_value > sol.evaluation.U_P + 1e-6) {
                  detail = "oracle exceeded the parametric value";
                  return false;
              }
              if (!(sol.evaluation.U_P - m12.best_value <
                    sol.evaluation.U_P - m6.best_value + 1e-12)) {
                  detail = "gap failed to shrink with refinement";
                  return false;
              }
              return true;
          });

    s.run("filling a material gap cannot improve the oracle optimum",
          [&](std::string& detail) {
              const auto grid = default_oracle_grid(st, 10);
              const auto res = enumerate_best(st, cost, grid, jobs);
              for (const auto& gc : res.gap_checks) {
                  if (!gc.material) continue;
                  auto extended = grid;
                  extended.push_back(0.5 * (gc.d1 + gc.d2));
                  std::sort(extended.begin(), extended.end());
                  const auto res2 = enumerate_best(st, cost, extended, jobs);
                  if (res2.best_value > res.best_value + 1e-9) {
                      detail = "midpoint of (" + fmt(gc.d1) + ", " + fmt(gc.d2) +
                               ") raised the optimum";
                      return false;
                  }
              }
              return true;
          });

    return s.checks;
}

} // namespace

std::vector<std::string> verify_suite_names() {
    return {"model_core", "sets", "agent", "principal", "optimizer", "bias", "oracle"};
}

std::vector<CheckResult> verify_suite(const std::string& suite, int jobs) {
    if (suite == "model_core") return suite_model_core();
    if (suite == "sets") return suite_sets();
    if (suite == "agent") return suite_agent();
    if (suite == "principal") return suite_principal();
    if (suite == "optimizer") return suite_optimizer(jobs);
    if (suite == "bias") return suite_bias(jobs);
    if (suite == "oracle") return suite_oracle(jobs);
    throw ConfigError("unknown verification suite \"" + suite + "\"");
}

bool run_verification(const std::string& suite, int jobs, std::string& report) {
    std::vector<std::string> names;
    if (suite == "all")
        names = verify_suite_names();
    else
        names.push_back(suite);

    std::ostringstream os;
    bool all_pass = true;
    for (const auto& name : names) {
        const auto checks = verify_suite(name, jobs);
        for (const auto& c : checks) {
            os << (c.pass ? "[PASS] " : "[FAIL] ") << name << ": " << c.name;
            if (!c.detail.empty()) os << " (" << c.detail << ")";
            os << "\n";
            all_pass = all_pass && c.pass;
        }
    }
    report = os.str();
    return all_pass;
}

} // namespace delegation
