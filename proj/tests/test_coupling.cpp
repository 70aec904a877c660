#include "doctest.h"

#include "robin_fsi/coupling.hpp"
#include "robin_fsi/mms.hpp"

#include <cmath>

using namespace robin_fsi;

namespace {

FluidState fluid_const(int nu, int np, double u, double p, double t) {
  return {Vector::Constant(nu, u), Vector::Constant(np, p), t};
}
SolidState solid_const(int n, double v, double t) { return {Vector::Constant(n, v), Vector::Constant(n, v), t}; }

bool same(const Vector& a, const Vector& b) { return a.size() == b.size() && (a.array() == b.array()).all(); }

}  // namespace

TEST_CASE("scheme names") {
  for (Scheme s : {Scheme::Alg1, Scheme::Monolithic, Scheme::RobinNeumann, Scheme::RobinRobin, Scheme::Loose})
    CHECK(parse_scheme(scheme_name(s)) == s);
  CHECK_THROWS_AS(parse_scheme("newton"), InvalidArgument);
  SchemeParams p;
  p.theta = 0.6;
  CHECK(scheme_settings(Scheme::RobinRobin, p, TractionMode::Variational).theta == 1.0);
  CHECK(scheme_settings(Scheme::RobinNeumann, p, TractionMode::Variational).alpha_solid == 0.0);
  CHECK(scheme_settings(Scheme::Loose, p, TractionMode::Variational).sub.max_subiters == 1);
  CHECK(scheme_settings(Scheme::Alg1, p, TractionMode::Variational).theta == 0.6);
}

TEST_CASE("initial guesses") {
  SUBCASE("constants are preserved") {
    for (double theta : {0.5, 0.8, 1.0}) {
      const ThetaGuess g = extrapolate_guess(fluid_const(3, 2, 2.0, 1.0, 0), fluid_const(3, 2, 2.0, 1.0, 0),
                                             solid_const(3, 2.0, 0), solid_const(3, 2.0, 0), Vector::Constant(2, 1.0),
                                             Vector::Constant(2, 1.0), theta, 0.1);
      CHECK((g.solid.eta.array() == 2.0).all());
      CHECK((g.fluid.u.array() == 2.0).all());
      CHECK((g.fluid.p.array() == 1.0).all());
    }
  }
  SUBCASE("linear extrapolation at theta = 1/2") {
    const ThetaGuess g = extrapolate_guess(fluid_const(1, 1, 1, 0, 0), fluid_const(1, 1, 0, 0, 0), solid_const(1, 1, 0),
                                           solid_const(1, 0, 0), Vector::Constant(1, 0), Vector::Constant(1, 0), 0.5, 0.1);
    CHECK(g.solid.eta[0] == 1.5);
    CHECK(g.solid.xi[0] == 1.5);
    CHECK(g.fluid.u[0] == 1.5);
  }
  SUBCASE("pressure guess") {
    const ThetaGuess g = extrapolate_guess(fluid_const(1, 1, 0, 0, 0), fluid_const(1, 1, 0, 0, 0), solid_const(1, 0, 0),
                                           solid_const(1, 0, 0), Vector::Constant(1, 2.0), Vector::Constant(1, 1.0), 0.5, 0.01);
    CHECK(g.fluid.p[0] == doctest::Approx(2.01).epsilon(1e-15));
  }
  SUBCASE("missing history") {
    CHECK_THROWS_AS(extrapolate_guess(fluid_const(2, 1, 0, 0, 0), fluid_const(1, 1, 0, 0, 0), solid_const(1, 0, 0),
                                      solid_const(1, 0, 0), Vector::Constant(1, 0), Vector::Constant(1, 0), 0.5, 0.1),
                      InsufficientHistory);
    CHECK_THROWS_AS(extrapolate_guess(fluid_const(1, 1, 0, 0, 0), fluid_const(1, 1, 0, 0, 0), solid_const(1, 0, 0),
                                      solid_const(1, 0, 0), Vector::Constant(1, 0), Vector(), 0.5, 0.1),
                      InsufficientHistory);
  }
}

TEST_CASE("sub-iterations on the manufactured problem") {
  const ManufacturedCase mc;
  const Discretization d(manufactured_setup(mc, 4, 2));
  const double theta = 0.5, tau = 0.02;
  const PartitionedSolvers S(d, theta, tau, 100.0, 100.0);
  const FluidState f0 = d.initial_fluid();
  const SolidState s0 = d.initial_solid();
  ThetaGuess guess{f0, s0, {}};

  SubiterationOptions tight;
  tight.eps = 1e-13;
  const SubiterationResult fixed = be_subiterate(S, f0, s0, guess, tight);
  REQUIRE(fixed.trace.converged);

  SUBCASE("the fixed point matches the monolithic step") {
    auto [mf, ms] = MonolithicProblem(d, theta, tau).solve(f0, s0, theta * tau);
    CHECK((fixed.fluid.u - mf.u).norm() < 1e-10 * mf.u.norm());
    CHECK((fixed.solid.xi - ms.xi).norm() < 1e-10 * ms.xi.norm());
    CHECK((fixed.fluid.p - mf.p).norm() < 1e-8 * mf.p.norm());
  }
  SUBCASE("an exact fixed point converges in one sweep") {
    SubiterationOptions o;
    o.eps = 1e-8;
    const SubiterationResult r = be_subiterate(S, f0, s0, {fixed.fluid, fixed.solid, fixed.traction}, o);
    CHECK(r.trace.count == 1);
    CHECK(r.trace.converged);
  }
  SUBCASE("the interface quantity decreases and the increments end below eps") {
    SubiterationOptions o;
    o.eps = 1e-6;
    const SubiterationResult r = be_subiterate(S, f0, s0, guess, o);
    const auto& q = r.trace.interface_quantity;
    for (size_t k = 1; k < q.size(); ++k) CHECK(q[k] <= q[k - 1] * (1 + 1e-9));
    CHECK(r.trace.inc_u.back() < o.eps);
    CHECK(r.trace.inc_xi.back() < o.eps);
    CHECK(r.trace.inc_eta.back() < o.eps);
    CHECK(r.trace.count <= o.max_subiters);
  }
  SUBCASE("the iteration cap raises a failure carrying the trace") {
    SubiterationOptions o;
    o.eps = 1e-12;
    o.max_subiters = 2;
    try {
      be_subiterate(S, f0, s0, guess, o);
      FAIL("expected a failure");
    } catch (const SubiterationFailure& e) {
      CHECK(e.trace.count == 2);
      CHECK_FALSE(e.trace.converged);
    }
    o.accept_unconverged = true;
    CHECK(be_subiterate(S, f0, s0, guess, o).trace.count == 2);
  }
}

TEST_CASE("transient runs") {
  const ManufacturedCase mc;
  SUBCASE("rest stays at rest") {
    ManufacturedCase z;
    z.amplitude = 0.0;
    const Discretization d(unforced_setup(z, 4, 2));
    for (Scheme s : {Scheme::Alg1, Scheme::Loose, Scheme::RobinRobin, Scheme::RobinNeumann, Scheme::Monolithic}) {
      RunOptions o;
      o.scheme = s;
      o.steps = 6;
      const TimeSeriesResult r = run_transient(d, o);
      REQUIRE(r.fluid.size() == 7);
      for (const auto& f : r.fluid) CHECK(f.u.isZero());
      for (const auto& st : r.solid) CHECK(st.eta.isZero());
    }
  }
  const Discretization d(manufactured_setup(mc, 4, 2));
  SUBCASE("time stamps and bootstrap") {
    RunOptions o;
    o.steps = 5;
    const TimeSeriesResult r = run_transient(d, o);
    CHECK(r.completed);
    CHECK(r.theta_of_step == std::vector<double>{0.5, 0.5, 0.5, 0.5, 0.5});
    CHECK(r.traces[0].count == 0);
    CHECK(r.traces[1].count == 0);
    for (int n = 2; n < 5; ++n) CHECK(r.traces[n].converged);
    for (int n = 0; n < 5; ++n) {
      CHECK(r.fluid[n + 1].t > r.fluid_theta[n].t);
      CHECK(r.fluid_theta[n].t > r.fluid[n].t);
    }
    CHECK(r.fluid.back().t == doctest::Approx(5 * 0.02));
  }
  SUBCASE("one-sweep alg1 reproduces the loosely coupled scheme bit for bit") {
    RunOptions a;
    a.scheme = Scheme::Alg1;
    a.steps = 8;
    a.params.max_subiters = 1;
    a.params.eps = 1e300;
    RunOptions l = a;
    l.scheme = Scheme::Loose;
    l.params.eps = 1e-4;
    const TimeSeriesResult ra = run_transient(d, a), rl = run_transient(d, l);
    for (size_t n = 0; n < ra.fluid.size(); ++n) {
      CHECK(same(ra.fluid[n].u, rl.fluid[n].u));
      CHECK(same(ra.solid[n].xi, rl.solid[n].xi));
      CHECK(same(ra.solid[n].eta, rl.solid[n].eta));
    }
    for (size_t n = 0; n < ra.fluid_theta.size(); ++n) CHECK(same(ra.fluid_theta[n].p, rl.fluid_theta[n].p));
  }
  SUBCASE("step failures carry the step index") {
    RunOptions o;
    o.steps = 4;
    o.params.eps = 1e-14;
    o.params.max_subiters = 1;
    try {
      run_transient(d, o);
      FAIL("expected a failure");
    } catch (const SubiterationFailure& e) {
      CHECK(std::string(e.what()).find("step 2") == 0);
    }
    o.stop_on_failure = true;
    const TimeSeriesResult r = run_transient(d, o);
    CHECK_FALSE(r.completed);
    CHECK(r.failed_step == 2);
  }
  SUBCASE("invalid parameters") {
    RunOptions o;
    o.params.theta = 0.3;
    CHECK_THROWS_AS(run_transient(d, o), InvalidArgument);
    o.params.theta = 0.5;
    o.steps = 0;
    CHECK_THROWS_AS(run_transient(d, o), InvalidArgument);
  }
  SUBCASE("a shared cache does not change results") {
    RunOptions o;
    o.steps = 6;
    SolverCache cache(d);
    const TimeSeriesResult a = run_transient(d, o, &cache), b = run_transient(d, o, &cache), c = run_transient(d, o);
    CHECK(same(a.fluid.back().u, b.fluid.back().u));
    CHECK(same(a.fluid.back().u, c.fluid.back().u));
  }
}

TEST_CASE("sub-iteration counts drop under refinement") {
  const ManufacturedCase mc;
  double prev = INFINITY;
  int nx = 4;
  double tau = 0.02;
  for (int level = 0; level < 3; ++level, nx *= 2, tau /= 2) {
    const Discretization d(manufactured_setup(mc, nx, nx / 2));
    RunOptions o;
    o.params.tau = tau;
    o.steps = static_cast<int>(std::lround(0.3 / tau));
    const double avg = run_transient(d, o).average_subiters();
    CHECK(avg >= 1.0);
    CHECK(avg <= 6.0);
    CHECK(avg <= prev);
    prev = avg;
  }
}
