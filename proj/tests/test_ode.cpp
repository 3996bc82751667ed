#include <doctest.h>

#include <cmath>
#include <limits>

#include "ndsylv/ode.hpp"
#include "ndsylv/rng.hpp"

using namespace ndsylv;

namespace {

std::vector<std::int64_t> idx(std::initializer_list<std::int64_t> v) { return {v}; }

}  // namespace

TEST_SUITE("ode") {
  TEST_CASE("t = 0 returns the initial state") {
    const OdeSystem sys = random_ode_system(idx({3, 2, 2}), 40);
    const SolveResult r = propagate(sys, 0.0);
    CHECK(max_abs_diff(r.x, sys.initial) <= 1e-13 * (1.0 + max_abs(sys.initial)));
  }

  TEST_CASE("scaled identities with zero forcing decay exponentially") {
    Xoshiro256pp rng(41);
    const auto dims = idx({2, 3});
    OdeSystem sys;
    sys.coefficients = {cxd(-0.5, 0.0) * Matrix::identity(2), cxd(-1.0, 0.3) * Matrix::identity(3)};
    sys.forcing = NDTensor::zeros(dims);
    sys.initial = random_tensor(dims, rng);
    const double t = 0.7;
    const SolveResult r = propagate(sys, t);
    const cxd factor = std::exp(cxd(-1.5, 0.3) * t);
    for (std::size_t i = 0; i < r.x.data.size(); ++i)
      CHECK(std::abs(r.x.data[i] - factor * sys.initial.data[i]) <= 1e-12);
  }

  TEST_CASE("closed form matches RK4 on a random system") {
    const OdeSystem sys = random_ode_system(idx({2, 3, 4}), 42);
    const double t = 0.1;
    const SolveResult exact = propagate(sys, t);
    const NDTensor stepped = rk4_reference(sys, t, 2.5e-5);
    CHECK(max_abs_diff(exact.x, stepped) <= 1e-10);
  }

  TEST_CASE("propagation composes as a semigroup") {
    const OdeSystem sys = random_ode_system(idx({3, 3}), 43);
    const SolveResult half = propagate(sys, 0.4);
    OdeSystem restarted = sys;
    restarted.initial = half.x;
    const SolveResult second = propagate(restarted, 0.4);
    const SolveResult direct = propagate(sys, 0.8);
    CHECK(max_abs_diff(second.x, direct.x) <= 1e-9 * (1.0 + max_abs(direct.x)));
  }

  TEST_CASE("derivative at zero matches the right-hand side") {
    const OdeSystem sys = random_ode_system(idx({2, 2, 2}), 44);
    NDTensor f0 = apply_operator(sys.coefficients, sys.initial);
    add_scaled(f0, 1.0, sys.forcing);
    const OdePropagator prop(sys);
    double previous = -1.0;
    for (const double h : {1e-2, 5e-3, 2.5e-3}) {
      NDTensor fd = prop.at(h).x;
      add_scaled(fd, -1.0, sys.initial);
      for (cxd& v : fd.data) v /= h;
      const double err = max_abs_diff(fd, f0);
      if (previous >= 0.0) CHECK(err <= 0.7 * previous);
      previous = err;
    }
    CHECK(previous <= 5e-2);
  }

  TEST_CASE("negative times run the flow backwards") {
    const OdeSystem sys = random_ode_system(idx({2, 2}), 45);
    const SolveResult forward = propagate(sys, 0.3);
    OdeSystem back = sys;
    back.initial = forward.x;
    const SolveResult round = propagate(back, -0.3);
    CHECK(max_abs_diff(round.x, sys.initial) <= 1e-10 * (1.0 + max_abs(sys.initial)));
    const NDTensor rk = rk4_reference(back, -0.3, 1e-3);
    CHECK(max_abs_diff(rk, sys.initial) <= 1e-8);
  }

  TEST_CASE("RK4 is exact for a constant derivative") {
    const auto dims = idx({2, 3});
    OdeSystem sys;
    sys.coefficients = {Matrix(2, 2), Matrix(3, 3)};
    Xoshiro256pp rng(46);
    sys.forcing = random_tensor(dims, rng);
    sys.initial = random_tensor(dims, rng);
    const double t = 0.37;
    const NDTensor x = rk4_reference(sys, t, 0.1);
    for (std::size_t i = 0; i < x.data.size(); ++i)
      CHECK(std::abs(x.data[i] - (sys.initial.data[i] + t * sys.forcing.data[i])) <= 1e-13);
  }

  TEST_CASE("halving the step cuts the RK4 error about sixteenfold") {
    const OdeSystem sys = random_ode_system(idx({2, 2, 3}), 47);
    const double t = 0.5;
    const SolveResult exact = propagate(sys, t);
    const double e1 = max_abs_diff(rk4_reference(sys, t, 2e-2), exact.x);
    const double e2 = max_abs_diff(rk4_reference(sys, t, 1e-2), exact.x);
    const double e3 = max_abs_diff(rk4_reference(sys, t, 5e-3), exact.x);
    CHECK(e1 / e2 >= 12.0);
    CHECK(e1 / e2 <= 20.0);
    CHECK(e2 / e3 >= 12.0);
    CHECK(e2 / e3 <= 20.0);
  }

  TEST_CASE("singular operator is reported with its multi-index") {
    OdeSystem sys;
    sys.coefficients = {Matrix::diagonal(std::vector<cxd>{1.0, -1.0}), Matrix::diagonal(std::vector<cxd>{-1.0, 1.0})};
    sys.forcing = NDTensor::zeros(idx({2, 2}));
    sys.forcing.data[0] = 1.0;
    sys.initial = NDTensor::zeros(idx({2, 2}));
    CHECK_THROWS_AS(propagate(sys, 0.5), SingularOperatorError);
  }

  TEST_CASE("step budget and argument validation") {
    const OdeSystem sys = random_ode_system(idx({2, 2}), 48);
    CHECK_THROWS_AS(rk4_reference(sys, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(rk4_reference(sys, 1.0, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(rk4_reference(sys, 1.0, 1e-9, 1000), std::invalid_argument);
    CHECK_THROWS_AS(propagate(sys, std::numeric_limits<double>::infinity()), std::invalid_argument);
  }

  TEST_CASE("diverging integration raises a non-finite error") {
    OdeSystem sys;
    sys.coefficients = {cxd(400.0, 0.0) * Matrix::identity(2), cxd(400.0, 0.0) * Matrix::identity(2)};
    sys.forcing = NDTensor::zeros(idx({2, 2}));
    sys.initial = NDTensor::zeros(idx({2, 2}));
    for (cxd& v : sys.initial.data) v = 1e300;
    CHECK_THROWS_AS(rk4_reference(sys, 10.0, 0.5), NonFiniteStateError);
  }

  TEST_CASE("shape validation") {
    OdeSystem sys = random_ode_system(idx({2, 2}), 49);
    sys.initial = NDTensor::zeros(idx({2, 3}));
    CHECK_THROWS_AS(propagate(sys, 0.1), std::invalid_argument);
  }
}
