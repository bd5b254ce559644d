#include <doctest.h>

#include <complex>
#include <random>

#include "bvpindex/degree.hpp"

using namespace bvpindex;
using degree::FiniteMap;
using linalg::Matrix;
using linalg::Vector;

namespace {

FiniteMap scalar_map(const std::function<double(double)>& f, std::optional<double> order = {},
                     bool odd = false) {
    return {1,
            [f](const Vector& u) {
                Vector r(1);
                r << f(u(0));
                return r;
            },
            order, odd};
}

FiniteMap complex_power(int k) {
    return {2,
            [k](const Vector& u) {
                std::complex<double> z(u(0), u(1)), w(1.0, 0.0);
                for (int i = 0; i < k; ++i) w *= z;
                Vector r(2);
                r << w.real(), w.imag();
                return r;
            },
            double(k), k % 2 == 1};
}

FiniteMap linear_map(const Matrix& A) {
    return {static_cast<int>(A.rows()), [A](const Vector& u) { return Vector(A * u); }, 1.0, true};
}

}  // namespace

TEST_CASE("sign formula in dimension 1") {
    CHECK(degree::degree_1d(scalar_map([](double t) { return t * t * t; }), 1.0) == 1);
    CHECK(degree::degree_1d(scalar_map([](double t) { return t * t; }), 1.0) == 0);
    CHECK(degree::degree_1d(scalar_map([](double t) { return -t; }), 1.0) == -1);
    CHECK_THROWS_AS(degree::degree_1d(scalar_map([](double t) { return t - 1.0; }), 1.0),
                    BoundaryZeroError);
}

TEST_CASE("winding engine") {
    CHECK(degree::degree_2d_winding(linear_map(Matrix::Identity(2, 2)), 1.0) == 1);
    CHECK(degree::degree_2d_winding(linear_map(Matrix(-Matrix::Identity(2, 2))), 1.0) == 1);
    CHECK(degree::degree_2d_winding(complex_power(2), 1.0) == 2);
    CHECK(degree::degree_2d_winding(complex_power(3), 1.0) == 3);
    CHECK(degree::degree_2d_winding(complex_power(2), 0.1) == 2);
    CHECK(degree::degree_2d_winding(complex_power(2), 10.0) == 2);

    // map that vanishes on the boundary circle
    FiniteMap bad{2,
                  [](const Vector& u) {
                      Vector r(2);
                      r << u.squaredNorm() - 1.0, 0.0;
                      return r;
                  },
                  std::nullopt, false};
    CHECK_THROWS_AS(degree::degree_2d_winding(bad, 1.0), RefinementLimitError);
}

TEST_CASE("multi-start engine") {
    FiniteMap neg3{3, [](const Vector& u) { return Vector(-u); }, 1.0, true};
    auto r = degree::degree_nd_regular(neg3, 1.0);
    CHECK(r.value == -1);
    CHECK(r.heuristic);

    // degenerate root at the origin handled through a perturbed regular value
    FiniteMap cubefirst{3,
                        [](const Vector& u) {
                            Vector out(3);
                            out << u(0) * u(0) * u(0), u(1), u(2);
                            return out;
                        },
                        std::nullopt, false};
    CHECK(degree::degree_nd_regular(cubefirst, 1.0).value == 1);

    // no zeros inside the ball
    FiniteMap shifted{3,
                      [](const Vector& u) {
                          Vector out = u;
                          out(0) += 2.0;
                          return out;
                      },
                      std::nullopt, false};
    CHECK(degree::degree_nd_regular(shifted, 1.0).value == 0);

    // d <= 2 is cross-checked against the exact engines and loses the flag
    CHECK_FALSE(degree::degree_nd_regular(linear_map(Matrix::Identity(2, 2)), 1.0).heuristic);
}

TEST_CASE("homogeneous engine") {
    auto odd_sqrt = scalar_map(
        [](double t) { return (t > 0 ? 1.0 : (t < 0 ? -1.0 : 0.0)) * std::sqrt(std::fabs(t)); },
        0.5, true);
    CHECK(degree::degree_homogeneous(odd_sqrt).value == 1);

    CHECK(degree::degree_homogeneous(scalar_map([](double t) { return t * t; }, 2.0)).value == 0);

    CHECK(degree::degree_homogeneous(complex_power(3)).value == 3);

    FiniteMap vanishing{2,
                        [](const Vector& u) {
                            Vector r(2);
                            r << u(0) * u(0), u(0) * u(1);
                            return r;
                        },
                        2.0, false};
    CHECK_THROWS_AS(degree::degree_homogeneous(vanishing), SphereZeroError);
}

TEST_CASE("normality and antipodal degrees") {
    CHECK(degree::degree_1d(scalar_map([](double t) { return t; }), 2.5) == 1);
    CHECK(degree::degree_2d_winding(linear_map(Matrix::Identity(2, 2)), 0.3) == 1);
    FiniteMap id3{3, [](const Vector& u) { return u; }, 1.0, true};
    CHECK(degree::degree_nd_regular(id3, 1.0).value == 1);

    CHECK(degree::degree_1d(scalar_map([](double t) { return -t; }), 1.0) == -1);
    CHECK(degree::degree_2d_winding(linear_map(Matrix(-Matrix::Identity(2, 2))), 1.0) == 1);
    FiniteMap neg3{3, [](const Vector& u) { return Vector(-u); }, 1.0, true};
    CHECK(degree::degree_nd_regular(neg3, 1.0).value == -1);
}

TEST_CASE("odd planar maps have odd degree (sampled)") {
    std::mt19937 rng(5150);
    std::uniform_real_distribution<double> ud(-2.0, 2.0);
    int built = 0;
    while (built < 5) {
        Matrix A(2, 2);
        A << ud(rng), ud(rng), ud(rng), ud(rng);
        const double c1 = ud(rng), c2 = ud(rng);
        FiniteMap f{2,
                    [A, c1, c2](const Vector& u) {
                        Vector r(2);
                        r(0) = A(0, 0) * u(0) + A(0, 1) * u(1) + c1 * u(0) * u(0) * u(0);
                        r(1) = A(1, 0) * u(0) + A(1, 1) * u(1) + c2 * u(1) * u(1) * u(1);
                        return r;
                    },
                    std::nullopt, true};
        if (degree::min_norm_on_sphere(f) < 1e-4) continue;
        ++built;
        CHECK(std::abs(degree::degree_2d_winding(f, 1.0)) % 2 == 1);
    }
}

TEST_CASE("linear degree equals the determinant sign") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> ud(-3.0, 3.0);
    for (int k = 0; k < 10;) {
        Matrix A(2, 2);
        A << ud(rng), ud(rng), ud(rng), ud(rng);
        if (std::fabs(A.determinant()) < 0.05) continue;
        ++k;
        CHECK(degree::degree_2d_winding(linear_map(A), 1.0) == (A.determinant() > 0 ? 1 : -1));
    }
}

TEST_CASE("small perturbations preserve the degree") {
    for (int k : {1, 2, 3}) {
        const auto f = complex_power(k);
        FiniteMap g{2,
                    [f](const Vector& u) {
                        Vector r = f.eval(u);
                        r(0) += 1e-3 * std::sin(u(1));
                        r(1) += 1e-3 * u(0);
                        return r;
                    },
                    std::nullopt, false};
        CHECK(degree::degree_2d_winding(g, 1.0) == k);
    }
}
