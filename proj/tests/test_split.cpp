#include <catch_amalgamated.hpp>

#include <lietoda/split.hpp>

#include <random>

using namespace lietoda;
using Catch::Matchers::WithinAbs;

namespace {

const std::vector<std::string> kTypes = {"A1", "A2", "A3", "A4", "B2", "C3", "D4", "G2"};

LieAlgebra make(const std::string& t) { return LieAlgebra(RootSystem(SimpleType::parse(t))); }

CyclicElement real_b(std::vector<double> v) {
  CyclicElement u;
  for (double x : v) u.b.emplace_back(x, 0.0);
  return u;
}

} // namespace

TEST_CASE("eigenspace decomposition") {
  const LieAlgebra a2 = make("A2");
  const SplitAutomorphism s2(a2);
  const auto d2 = eigenspace_decomposition(s2);
  CHECK(d2.modulus == 3);
  CHECK(d2.pieces[1].size() == 3);
  CHECK(d2.grading_compatible);

  const LieAlgebra a1 = make("A1");
  const auto d1 = eigenspace_decomposition(SplitAutomorphism(a1));
  CHECK(d1.pieces[0].size() == 1);
  CHECK(d1.pieces[1].size() == 2);

  for (const auto& t : kTypes) {
    INFO(t);
    const LieAlgebra lie = make(t);
    const SplitAutomorphism sigma(lie);
    const auto d = eigenspace_decomposition(sigma);
    CHECK(d.grading_compatible);
    std::size_t total = 0;
    for (const auto& p : d.pieces) total += p.size();
    CHECK(static_cast<int>(total) == lie.dim());
    // g_0 = t and g_1 = span{e_alpha_i, e_-psi}
    CHECK(static_cast<int>(d.pieces[0].size()) == lie.rank());
    for (int k : d.pieces[0]) CHECK(lie.is_cartan(k));
    std::vector<int> g1;
    for (const auto& r : lie.root_system().weight_one_eigenroots()) g1.push_back(lie.root_vector(r));
    std::sort(g1.begin(), g1.end());
    auto p1 = d.pieces[1];
    std::sort(p1.begin(), p1.end());
    CHECK(p1 == g1);
    // action has order exactly h+1
    const Eigen::VectorXcd a = sigma.action();
    const int m = sigma.order();
    CHECK((a.array().pow(m) - 1.0).abs().maxCoeff() < 1e-12);
    for (int j = 1; j < m; ++j) CHECK((a.array().pow(j) - 1.0).abs().maxCoeff() > 1e-3);
  }
  const auto dg = eigenspace_decomposition(SplitAutomorphism(make("G2")));
  CHECK(dg.modulus == 6);
}

TEST_CASE("cyclicity") {
  CHECK(is_cyclic(real_b({1, 1, 1})));
  CHECK_FALSE(is_cyclic(real_b({1, 0, 1})));
  CHECK(is_cyclic(real_b({2, 1, 0.5})));
}

TEST_CASE("regular semisimple examples") {
  const LieAlgebra a2 = make("A2");
  CHECK(is_regular_semisimple(a2, real_b({1, 1, 1}).realize(a2)));
  CHECK_FALSE(is_regular_semisimple(a2, a2.basis_vector(a2.root_vector({1, 0}))));
  CHECK(is_regular_semisimple(a2, a2.toral({1.0, 1.0})));
  const auto r = regularity(a2, a2.basis_vector(a2.root_vector({1, 0})));
  CHECK(r.generalized_kernel > r.kernel_dim);
}

TEST_CASE("split examples") {
  const LieAlgebra a2 = make("A2");
  const auto rep = verify_split(a2, SplitAutomorphism(a2), real_b({1, 1, 1}));
  CHECK(rep.holds);
  CHECK(rep.centralizer_dim == 2);
  CHECK(rep.intersection_dim == 0);
  CHECK_FALSE(rep.indeterminate);

  const LieAlgebra a1 = make("A1");
  const auto r1 = verify_split(a1, SplitAutomorphism(a1), real_b({1, 1}));
  CHECK(r1.holds);
  CHECK(r1.centralizer_dim == 1);
  CHECK(r1.intersection_dim == 0);
  // kernel oracle: e + f commutes with itself and with nothing else in the basis span
  const GElement u = real_b({1, 1}).realize(a1);
  CHECK(a1.bracket(u, u).cwiseAbs().maxCoeff() == 0.0);
  CHECK(a1.bracket(u, a1.basis_vector(0)).cwiseAbs().maxCoeff() > 0.1);

  CHECK_THROWS_AS(verify_split(a2, SplitAutomorphism(a2), real_b({1, 0, 1})), InputError);
}

TEST_CASE("Kostant equivalence on random elements of g_1") {
  for (const auto& t : kTypes) {
    INFO(t);
    const LieAlgebra lie = make(t);
    const SplitAutomorphism sigma(lie);
    std::mt19937_64 rng(1234);
    for (int s = 0; s < 100; ++s) {
      const CyclicElement c = random_cyclic(lie.root_system(), rng);
      REQUIRE(is_cyclic(c));
      const auto reg = regularity(lie, c.realize(lie));
      CHECK(reg.regular_semisimple);
      CHECK_FALSE(reg.indeterminate);
      const auto sp = verify_split(lie, sigma, c);
      CHECK(sp.holds);

      const CyclicElement n = random_noncyclic(lie.root_system(), rng);
      REQUIRE_FALSE(is_cyclic(n));
      const GElement x = n.realize(lie);
      // realized element sits in g_1
      for (int k = 0; k < lie.dim(); ++k)
        if (x[k] != 0.0) CHECK(sigma.eigen_index(k) == 1);
      CHECK_FALSE(is_regular_semisimple(lie, x));
    }
  }
}

TEST_CASE("[u, rho(u)] closed form") {
  const LieAlgebra a2 = make("A2");
  const CartanInvolution rho(a2);
  const auto r = bracket_rho_closed_form(a2, rho, real_b({2, 1, 1}));
  CHECK_THAT(r.sharp_coords[0], WithinAbs(-3.0, 1e-15));
  CHECK_THAT(r.sharp_coords[1], WithinAbs(0.0, 1e-15));
  CHECK(r.residual <= 1e-12);

  for (const auto& t : kTypes) {
    INFO(t);
    const LieAlgebra lie = make(t);
    const CartanInvolution rh(lie);
    const RootSystem& rs = lie.root_system();
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> ph(0, 6.283185307179586);
    for (int s = 0; s < 1000; ++s) {
      const CyclicElement u = random_cyclic(rs, rng);
      const auto br = bracket_rho_closed_form(lie, rh, u);
      CHECK(br.residual <= 1e-12);
      // phase invariance
      const auto rot = bracket_rho_closed_form(lie, rh, u.scaled(std::polar(1.0, ph(rng))));
      CHECK((rot.sharp_coords - br.sharp_coords).cwiseAbs().maxCoeff() <= 1e-12);
    }
    // vanishing when |b_i|^2 = psi_i |b_-psi|^2
    CyclicElement bal;
    for (int i = 0; i < rs.rank(); ++i) bal.b.push_back(std::polar(std::sqrt(double(rs.psi()[i])) * 0.7, ph(rng)));
    bal.b.push_back(std::polar(0.7, ph(rng)));
    const auto z = bracket_rho_closed_form(lie, rh, bal);
    CHECK(z.sharp_coords.cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(lie.bracket(bal.realize(lie), rh.apply(bal.realize(lie))).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("[u, rho(u)] vanishes exactly on the balanced locus") {
  for (const auto& t : kTypes) {
    const LieAlgebra lie = make(t);
    const RootSystem& rs = lie.root_system();
    const CartanInvolution rho(lie);
    const auto pq = rs.weight_one_eigenroots();
    ExactElement u;
    for (int i = 0; i < rs.rank(); ++i) accumulate(u, lie.root_vector(pq[i]), Surd::sqrt(rs.psi()[i]) * Surd(3));
    accumulate(u, lie.root_vector(pq.back()), Surd(3));
    CHECK(lie.bracket(u, rho.apply(u)).empty());
    // off the locus it does not vanish
    ExactElement v = u;
    accumulate(v, lie.root_vector(pq[0]), Surd(1));
    CHECK_FALSE(lie.bracket(v, rho.apply(v)).empty());
  }
}

TEST_CASE("normalized form reproduces the general-coefficient form") {
  for (const auto& t : kTypes) {
    const LieAlgebra lie = make(t);
    const RootSystem& rs = lie.root_system();
    const CartanInvolution rho(lie);
    std::mt19937_64 rng(3);
    for (int s = 0; s < 50; ++s) {
      const CyclicElement c = random_cyclic(rs, rng);
      const CyclicElement u = from_normalized_coefficients(rs, c.b);
      const auto br = bracket_rho_closed_form(lie, rho, u);
      CHECK((br.sharp_coords - bracket_rho_normalized_form(rs, c.b)).cwiseAbs().maxCoeff() <= 1e-12);
    }
    std::vector<std::complex<double>> eq(rs.rank() + 1, std::polar(1.3, 0.4));
    CHECK(bracket_rho_normalized_form(rs, eq).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("o-invariant") {
  const RootSystem a2(SimpleType::parse("A2"));
  const RootSystem g2(SimpleType::parse("G2"));
  CHECK(o_invariant(a2, real_b({1, 1, 1})) == std::complex<double>(1.0));
  CHECK(o_invariant(g2, real_b({1, 1, 1})) == std::complex<double>(1.0));
  const CyclicElement u = real_b({2, 1, 0.5});
  CHECK_THAT(std::abs(o_invariant(a2, u.scaled(2.0)) - 8.0 * o_invariant(a2, u)), WithinAbs(0.0, 1e-12));

  for (const auto& t : kTypes) {
    const RootSystem rs(SimpleType::parse(t));
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> mod(0.5, 1.5), ph(0, 6.283185307179586);
    for (int s = 0; s < 100; ++s) {
      const CyclicElement c = random_cyclic(rs, rng);
      const std::complex<double> lam = std::polar(mod(rng), ph(rng));
      const std::complex<double> lhs = o_invariant(rs, c.scaled(lam));
      const std::complex<double> rhs = std::pow(lam, rs.h() + 1) * o_invariant(rs, c);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("classification region") {
  const RootSystem a2(SimpleType::parse("A2"));
  const auto r0 = classification_region(a2, 0);
  CHECK(r0.contains({0, 0}));
  CHECK(r0.contains({-1, -1}));
  CHECK_FALSE(r0.contains({-2, -2}));
  CHECK(r0.has_interior());
  CHECK_THAT(r0.c_theta(), WithinAbs(0.0, 0.0));
  const auto edge = classification_region(a2, -1);
  CHECK(edge.contains({-1, -1}));                 // psi(beta) + h + 1 + m = 0
  CHECK_FALSE(edge.contains({-1.001, -1}));
  CHECK(edge.contains({-1.0 - 1e-10, -1}, 1e-9));

  const RootSystem a1(SimpleType::parse("A1"));
  CHECK_FALSE(classification_region(a1, 0).contains({1.0}));
  CHECK(classification_region(a1, 0).contains({-2.0}));
  CHECK_FALSE(classification_region(a1, 0).contains({-2.1}));

  for (const std::string t : {"A1", "A3", "B2", "G2"}) {
    const RootSystem rs(SimpleType::parse(t));
    for (int m = -(rs.h() + 1) - 3; m <= -(rs.h() + 1); ++m) {
      const auto r = classification_region(rs, m);
      CHECK(r.is_trivial());
      CHECK_FALSE(r.in_positive_part());
      CHECK_FALSE(r.contains(std::vector<double>(rs.rank(), 0.0)));
    }
    const auto r = classification_region(rs, -rs.h());
    CHECK(r.in_positive_part());
    CHECK_THAT(r.c_theta(), WithinAbs(double(rs.h()) / (rs.h() + 1), 1e-15));
  }
}
