#include <catch_amalgamated.hpp>

#include <lietoda/toda.hpp>

#include <random>

#include "oracles.hpp"

using namespace lietoda;
using Catch::Matchers::WithinAbs;

namespace {

RootSystem make(const std::string& t) { return RootSystem(SimpleType::parse(t)); }

CyclicElement real_b(std::vector<double> v) {
  CyclicElement u;
  for (double x : v) u.b.emplace_back(x, 0.0);
  return u;
}

TodaProblem constant_problem(const std::string& type, const CyclicElement& b, std::vector<double> delta, double t,
                             int n = 8) {
  const RootSystem rs = make(type);
  TodaProblem p{rs, Rectangle{-1, 1, -1, 1, n, n}, HiggsCoefficient::constant(b), {}, t, {}};
  p.boundary.kind = Boundary::Kind::CanonicalPlus;
  p.boundary.values = std::move(delta);
  return p;
}

Field random_field(int l, int nodes, std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> d(-scale, scale);
  Field y(l, nodes);
  for (int k = 0; k < nodes; ++k)
    for (int i = 0; i < l; ++i) y(i, k) = d(rng);
  return y;
}

} // namespace

TEST_CASE("canonical decoupled metric") {
  const RootSystem a1 = make("A1");
  const Eigen::VectorXd x = canonical_xi(a1, real_b({2, 0.5}));
  CHECK_THAT(x[0], WithinAbs(-std::log(2.0), 1e-15));
  CHECK_THAT(4 * std::exp(-2 * std::log(2.0)), WithinAbs(0.25 * std::exp(2 * std::log(2.0)), 1e-15));

  const RootSystem a2 = make("A2");
  const CyclicElement b = real_b({1, 1, std::exp(1.0)});
  CHECK(decoupling_defect(a2, b, canonical_xi(a2, b)) <= 1e-12);

  for (const std::string t : {"A1", "A3", "B2", "G2", "C3"}) {
    const RootSystem rs = make(t);
    CyclicElement bal;
    for (int i = 0; i < rs.rank(); ++i) bal.b.push_back(std::sqrt(double(rs.psi()[i])) * 1.7);
    bal.b.push_back(1.7);
    CHECK(canonical_xi(rs, bal).cwiseAbs().maxCoeff() <= 1e-15);
  }
  CHECK_THROWS_AS(canonical_xi(a2, real_b({1, 0, 1})), InputError);
}

TEST_CASE("canonical_xi post-check on random cyclic elements") {
  for (const std::string t : {"A1", "A2", "A3", "A4", "B2", "C3", "D4", "G2"}) {
    INFO(t);
    const LieAlgebra lie{make(t)};
    const RootSystem& rs = lie.root_system();
    const CartanInvolution rho(lie);
    std::mt19937_64 rng(21);
    for (int s = 0; s < 100; ++s) {
      const CyclicElement b = random_cyclic(rs, rng);
      const Eigen::VectorXd xi = canonical_xi(rs, b);
      CHECK(decoupling_defect(rs, b, xi) <= 1e-12);
      // rescaling by e^{phi(xi)} lands on the locus where [u, rho u] = 0
      CyclicElement r = b;
      const auto pq = rs.weight_one_eigenroots();
      for (int a = 0; a <= rs.rank(); ++a) {
        double v = 0;
        for (int i = 0; i < rs.rank(); ++i) v += pq[a][i] * xi[i];
        r.b[a] *= std::exp(v);
      }
      CHECK(bracket_rho_closed_form(lie, rho, r).sharp_coords.cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("residual on simple fields") {
  const TodaProblem p = constant_problem("A2", real_b({1.3, 0.7, 2.0}), {0, 0}, 2.5);
  const TodaOperator op(p);
  const Field can = boundary_field(p, op.grid());
  Field y(2, op.grid().nodes());
  for (int k = 0; k < y.cols(); ++k) y.col(k) = canonical_xi(p.rs, constant_coefficients(p.higgs));
  CHECK(sup_norm(op.residual(y)) <= 1e-14);
  CHECK(sup_norm(can - y) >= 0.0);

  TodaProblem z = p;
  z.t = 0;
  CHECK(sup_norm(toda_residual(z, Field::Zero(2, op.grid().nodes()))) == 0.0);

  TodaProblem none = p;
  none.higgs.f.assign(3, LaurentSeries{});
  CHECK_THROWS_AS(TodaOperator(none), InputError);
}

TEST_CASE("residual against a Lie-algebra evaluation") {
  // E = omega^{-1} L y - 2 t^2 sum |f|^2 e^{2 phi(xi)} phi^#, with phi^# and alpha_i(.) taken from the algebra.
  const LieAlgebra lie{make("G2")};
  HiggsCoefficient h;
  h.f = {LaurentSeries{{{0, {1.0, 0.5}}, {1, {0.3, 0.0}}}}, LaurentSeries::monomial({0.0, 2.0}, -1),
         LaurentSeries::monomial(0.8, 2)};
  const TodaProblem p{lie.root_system(), LogPolarAnnulus{-1.5, -0.2, 10, 12}, h, {}, 1.7, {}};
  const TodaOperator op(p);
  std::mt19937_64 rng(6);
  const Field y = random_field(2, op.grid().nodes(), rng, 0.4);
  const Field e = op.residual(y);
  const auto pq = lie.root_system().weight_one_eigenroots();
  double worst = 0;
  for (int k : op.interior()) {
    const auto& g = op.grid();
    const auto st = g.stencil(k);
    const Eigen::VectorXd lap = ((y.col(st.e) + y.col(st.w) - 2 * y.col(k)) / (g.h1() * g.h1()) +
                                 (y.col(st.n) + y.col(st.s) - 2 * y.col(k)) / (g.h2() * g.h2())) *
                                std::exp(-2 * g.c1(k));
    GElement src = GElement::Zero(lie.dim());
    const GElement xi = lie.toral({y(0, k), y(1, k)});
    for (int a = 0; a < 3; ++a) {
      const double phi_xi = lie.evaluate(pq[a], xi).real();
      src += 2 * p.t * p.t * std::norm(p.higgs.f[a](g.z(k))) * std::exp(2 * phi_xi) * lie.sharp(pq[a]);
    }
    for (int i = 0; i < 2; ++i) {
      const double ref = lap[i] - lie.evaluate(lie.root_system().simple_root(i), src).real();
      worst = std::max(worst, std::abs(ref - e(i, k)) / std::max(1.0, std::abs(ref)));
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("Jacobian matches central differences") {
  std::mt19937_64 rng(31);
  std::vector<TodaProblem> problems;
  problems.push_back(constant_problem("A2", real_b({1, 0.8, 1.4}), {0.2, -0.1}, 2.0));
  problems.push_back(constant_problem("G2", real_b({0.6, 1.1, 0.9}), {0.1, 0.1}, 1.5));
  HiggsCoefficient h;
  h.f = {LaurentSeries{{{-1, 1.0}, {1, 0.4}}}, LaurentSeries::monomial(0.7, 1)};
  problems.push_back({make("A1"), LogPolarAnnulus{-1.0, -0.1, 8, 8}, h, {}, 1.2, {}});
  for (const auto& p : problems) {
    const TodaOperator op(p);
    const int l = op.rank();
    const Field y = random_field(l, op.grid().nodes(), rng, 0.3);
    const Eigen::MatrixXd j = op.residual_jacobian(y);
    Eigen::MatrixXd fd(j.rows(), j.cols());
    const double step = 1e-5;
    for (std::size_t c = 0; c < op.interior().size(); ++c)
      for (int i = 0; i < l; ++i) {
        Field yp = y, ym = y;
        yp(i, op.interior()[c]) += step;
        ym(i, op.interior()[c]) -= step;
        const Field d = (op.residual(yp) - op.residual(ym)) / (2 * step);
        for (std::size_t r = 0; r < op.interior().size(); ++r)
          fd.block(r * l, c * l + i, l, 1) = d.col(op.interior()[r]);
      }
    const double rel = (j - fd).cwiseAbs().maxCoeff() / j.cwiseAbs().maxCoeff();
    CHECK(rel <= 1e-6);
  }
}

TEST_CASE("Newton matrix is symmetric negative definite") {
  std::mt19937_64 rng(12);
  for (const std::string t : {"A2", "B2", "G2"}) {
    TodaProblem p = constant_problem(t, real_b({1.0, 0.7, 1.3}), {0.3, -0.2}, 2.0, 6);
    const TodaSolution sol = solve_dirichlet(p);
    REQUIRE(sol.converged);
    for (const Field& y : {sol.xi, Field(sol.xi + random_field(2, sol.xi.cols(), rng, 0.5))}) {
      const TodaOperator op(p);
      const Eigen::MatrixXd m = op.newton_matrix(y);
      CHECK((m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * m.cwiseAbs().maxCoeff());
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()));
      CHECK(es.eigenvalues().maxCoeff() < 0);
      // J_F = omega G^{-1} dE/dy on interior unknowns
      const Eigen::MatrixXd je = op.residual_jacobian(y);
      const int l = op.rank();
      Eigen::MatrixXd scaled = je;
      for (std::size_t c = 0; c < op.interior().size(); ++c)
        scaled.middleRows(c * l, l) = op.omega(op.interior()[c]) * op.dual_gram() * je.middleRows(c * l, l);
      CHECK((scaled - m).cwiseAbs().maxCoeff() <= 1e-10 * m.cwiseAbs().maxCoeff());
    }
  }
}

TEST_CASE("canonical fixed point") {
  for (const std::string t : {"A1", "A2", "G2"}) {
    const RootSystem rs = make(t);
    std::vector<double> b(rs.rank() + 1, 1.0);
    b[0] = 1.7;
    TodaProblem p = constant_problem(t, real_b(b), std::vector<double>(rs.rank(), 0.0), 3.0, 16);
    for (const char* init : {"harmonic", "zero"}) {
      p.solver.init = init;
      INFO(t << " " << init);
      const TodaSolution sol = solve_dirichlet(p);
      CHECK(sol.converged);
      // the harmonic start is the constant boundary value, already the solution
      if (std::string(init) == "harmonic") CHECK(sol.iterations == 1);
      CHECK(sol.residual <= 1e-12);
      const Eigen::VectorXd can = canonical_xi(rs, real_b(b));
      for (int k = 0; k < sol.xi.cols(); ++k) CHECK((sol.xi.col(k) - can).cwiseAbs().maxCoeff() <= 1e-14);
    }
  }
}

TEST_CASE("perturbed boundary: convergence, uniqueness and the relaxation oracle") {
  const CyclicElement b = real_b({1.0, 0.6, 1.5});
  TodaProblem p = constant_problem("A2", b, {0.4, -0.3}, 2.0, 8);
  p.solver.init = "harmonic";
  const TodaSolution s1 = solve_dirichlet(p);
  p.solver.init = "zero";
  const TodaSolution s2 = solve_dirichlet(p);
  REQUIRE(s1.converged);
  REQUIRE(s2.converged);
  CHECK(s1.residual <= 1e-10);
  CHECK(s2.residual <= 1e-10);
  CHECK(sup_norm(s1.xi - s2.xi) <= 1e-6);
  CHECK(s1.residual == sup_norm(toda_residual(p, s1.xi)));

  // nonlinear Gauss-Seidel from the boundary data
  const TodaOperator op(p);
  oracle::Relaxation gs;
  gs.gram = op.root_gram();
  for (int a = 0; a < 3; ++a) {
    gs.n.push_back(op.root_coefficients().col(a));
    gs.w.push_back(op.weight(a, 0));
  }
  gs.nx = gs.ny = 8;
  gs.hx = gs.hy = 0.25;
  Field y = boundary_field(p, op.grid());
  for (int sweep = 0; sweep < 5000; ++sweep) {
    const Field before = y;
    gs.sweep(y);
    if (sup_norm(y - before) < 1e-15) break;
  }
  CHECK(sup_norm(y - s1.xi) <= 1e-9);

  // interior attraction toward xi_can
  const Eigen::VectorXd can = canonical_xi(p.rs, b);
  double inner = 0, edge = 0;
  for (int k = 0; k < op.grid().nodes(); ++k) {
    const double d = killing_norm(p.rs, s1.xi.col(k) - can);
    if (op.grid().is_boundary(k)) edge = std::max(edge, d);
  }
  for (int k : inner_nodes(op.grid(), 0.5)) inner = std::max(inner, killing_norm(p.rs, s1.xi.col(k) - can));
  CHECK(inner < edge);
}

TEST_CASE("uniqueness across initializations on Laurent data") {
  HiggsCoefficient h;
  h.f = {LaurentSeries{{{-1, 1.0}, {0, {0.2, 0.3}}}}, LaurentSeries::monomial(0.5, 2)};
  TodaProblem p{make("A1"), LogPolarAnnulus{-2.0, -0.3, 24, 16}, h, {}, 1.0, {}};
  p.boundary.kind = Boundary::Kind::Ends;
  p.boundary.inner = {0.5};
  p.boundary.outer = {-0.2};
  p.solver.init = "harmonic";
  const TodaSolution a = solve_dirichlet(p);
  p.solver.init = "zero";
  const TodaSolution b = solve_dirichlet(p);
  REQUIRE(a.converged);
  REQUIRE(b.converged);
  CHECK(sup_norm(a.xi - b.xi) <= 1e-6);
  CHECK(a.residual <= 1e-10);
}

TEST_CASE("radial problems") {
  const RootSystem a1 = make("A1");
  TodaProblem hom{a1, Radial{-3.0, 0.0, 64}, HiggsCoefficient::homogeneous(a1), {}, 1.0, {}};
  hom.boundary.kind = Boundary::Kind::Ends;
  hom.boundary.inner = {0.0};
  hom.boundary.outer = {0.0};
  CHECK(hom.higgs.f[0].terms[0].k == -1);
  CHECK(hom.higgs.f[1].terms[0].k == a1.h());
  const TodaSolution s = solve_radial(hom);
  CHECK(s.converged);
  CHECK(s.residual <= 1e-10);

  const CyclicElement b = real_b({0.8, 1.9});
  TodaProblem cst{a1, Radial{-2.0, -0.5, 32}, HiggsCoefficient::constant(b), {}, 2.0, {}};
  cst.boundary.kind = Boundary::Kind::Ends;
  const Eigen::VectorXd can = canonical_xi(a1, b);
  cst.boundary.inner = cst.boundary.outer = {can[0]};
  const TodaSolution c = solve_radial(cst);
  CHECK(c.converged);
  CHECK((c.xi.array() - can[0]).abs().maxCoeff() <= 1e-12);

  HiggsCoefficient nm;
  nm.f = {LaurentSeries{{{0, 1.0}, {1, 1.0}}}, LaurentSeries::constant(1.0)};
  TodaProblem bad{a1, LogPolarAnnulus{-2.0, -0.5, 8, 8}, nm, cst.boundary, 1.0, {}};
  CHECK_THROWS_AS(solve_radial(bad), InputError);
  TodaProblem rect = cst;
  rect.domain = Rectangle{-1, 1, -1, 1, 4, 4};
  CHECK_THROWS_AS(solve_radial(rect), InputError);
}

TEST_CASE("radial and two-dimensional solvers agree") {
  const RootSystem a2 = make("A2");
  TodaProblem p{a2, LogPolarAnnulus{-3.0, 0.0, 48, 24}, HiggsCoefficient::homogeneous(a2), {}, 1.0, {}};
  p.boundary.kind = Boundary::Kind::Ends;
  p.boundary.inner = {0.4, -0.1};
  p.boundary.outer = {0.0, 0.2};
  const TodaSolution r = solve_radial(p);
  const TodaSolution d = solve_dirichlet(p);
  REQUIRE(r.converged);
  REQUIRE(d.converged);
  CHECK(sup_norm(extend_radial(r.xi, Grid(p.domain)) - d.xi) <= 1e-8);
}

TEST_CASE("model metric") {
  const RootSystem a1 = make("A1");
  const ModelParams p{{0}, {0.0}, {0}};
  const auto st = model_refinement(a1, p, 1.0, 0.1, 0.5, {32, 64, 128});
  REQUIRE(st.orders.size() == 2);
  for (double o : st.orders) CHECK((o >= 1.8 && o <= 2.2));

  // radial and 2-D evaluations agree
  const RootSystem a2 = make("A2");
  const ModelParams p2{{0, 1}, {0.0, 0.0}, {0, 0}};
  const ModelMetric mm = model_metric(a2, p2, 1.0);
  const Grid ann(LogPolarAnnulus::from_radii(0.1, 0.5, 10, 7));
  const Field y2 = sample_model(ann, mm);
  const Field y1 = sample_model(Grid(Radial{std::log(0.1), std::log(0.5), 10}), mm);
  CHECK(sup_norm(extend_radial(y1, ann) - y2) <= 1e-14);

  // |e_phi|^2 = |z|^{-2 beta(phi)} (-log|z|^{2t})^{-2 phi(u_S)} for phi in S
  const RootSystem a2m = make("A2");
  const ModelParams pm{{2}, {-1.0, -1.0}, {2}};
  for (double t : {0.5, 1.0, 3.0}) {
    const ModelMetric m = model_metric(a2m, pm, t);
    const double r = 0.25;
    const Eigen::VectorXd xi = m.at(std::log(r));
    const auto pq = a2m.weight_one_eigenroots();
    const auto u = compute_u_S(a2m, pm.subset);
    double phi_xi = 0, phi_beta = 0, phi_u = 0;
    for (int i = 0; i < 2; ++i) {
      phi_xi += pq[2][i] * xi[i];
      phi_beta += pq[2][i] * pm.beta[i];
      phi_u += pq[2][i] * to_double(u.eps[i]);
    }
    CHECK_THAT(phi_u, WithinAbs(1.0, 1e-15));
    const double lhs = std::exp(2 * phi_xi);
    const double rhs = std::pow(r, -2 * phi_beta) * std::pow(-2 * t * std::log(r), -2 * phi_u);
    CHECK_THAT(lhs / rhs, WithinAbs(1.0, 1e-13));
  }

  CHECK_THROWS_AS(model_metric(a2m, {{2}, {-1.0, -1.0}, {1}}, 1.0), InputError);
  CHECK_THROWS_AS(model_refinement(a1, p, 1.0, 0.1, 1.0, {8, 16}), InputError);
  CHECK_THROWS_AS(sample_model(Grid(Rectangle{-1, 1, -1, 1, 4, 4}), model_metric(a1, p, 1.0)), InputError);
}

TEST_CASE("a solved model problem follows the closed form") {
  // Dirichlet data from the model metric on both ends; discretization error only.
  // Deep near the puncture the absolute residual floor exceeds the solver tolerance, so stay at moderate s.
  const RootSystem a2 = make("A2");
  const ModelParams p{{2}, {-1.0, -1.0}, {2}};
  std::vector<double> err;
  for (int n : {50, 100}) {
    TodaProblem prob{a2, Radial{-2.0, -0.5, n}, model_higgs(a2, p), {}, 1.0, {}};
    prob.boundary.kind = Boundary::Kind::Model;
    prob.boundary.model = p;
    const TodaSolution sol = solve_radial(prob);
    REQUIRE(sol.converged);
    const Field exact = sample_model(Grid(prob.domain), model_metric(a2, p, 1.0));
    err.push_back(sup_norm(sol.xi - exact));
  }
  CHECK(err[1] <= 1e-4);
  CHECK(err[0] / err[1] >= 3.0);
}

TEST_CASE("slope fit") {
  const RootSystem a1 = make("A1");
  const auto zero = asymptotic_slope(sample_model_solution(a1, {{0}, {0.0}, {0}}, 1.0, -7, -1, 600), -6, -4);
  CHECK(std::abs(zero.beta[0]) <= 0.05);

  const RootSystem a2 = make("A2");
  const ModelParams p{{2}, {-1.0, -1.0}, {2}};
  const auto f = asymptotic_slope(sample_model_solution(a2, p, 1.0, -7, -1, 600), -6, -4);
  CHECK_THAT(f.beta[0], WithinAbs(-1.0, 0.05));
  CHECK_THAT(f.beta[1], WithinAbs(-1.0, 0.05));
  const auto ord = o_order(a2, completed_model_higgs(a2, p));
  REQUIRE(ord.has_value());
  CHECK(*ord == -1);
  CHECK(classification_region(a2, *ord).contains({f.beta[0], f.beta[1]}, 1e-9));

  // without the log-log regressor the fit is visibly biased
  const auto lin = asymptotic_slope(sample_model_solution(a2, p, 1.0, -7, -1, 600), -6, -4, false);
  CHECK(std::abs(lin.beta[0] + 1.0) > 0.05);

  CHECK_THROWS_AS(asymptotic_slope(sample_model_solution(a2, p, 1.0, -7, -1, 600), -6, -5.97), InputError);
}

TEST_CASE("decay study basics") {
  const RootSystem a1 = make("A1");
  const Rectangle dom{-1, 1, -1, 1, 16, 16};
  const auto none = decay_study(a1, real_b({1, 1}), {1, 2}, {0.0}, dom, 0.5);
  for (const auto& pt : none.points) CHECK(pt.sup_distance <= 1e-14);

  const auto st = decay_study(a1, real_b({1, 1}), {1, 2, 4}, {0.15}, dom, 0.5);
  REQUIRE(st.fit.has_value());
  CHECK(st.fit->slope < 0);
  for (std::size_t i = 0; i + 1 < st.points.size(); ++i)
    CHECK(st.points[i + 1].sup_distance <= st.points[i].sup_distance + 1e-9);

  CHECK_THROWS_AS(decay_study(a1, real_b({1, 0}), {1}, {0.1}, dom, 0.5), InputError);
  CHECK_THROWS_AS(decay_study(a1, real_b({1, 1}), {2, 1}, {0.1}, dom, 0.5), InputError);
  CHECK_THROWS_AS(decay_study(a1, real_b({1, 1}), {0.5}, {0.1}, dom, 0.5), InputError);
}

TEST_CASE("grids and input errors") {
  const Grid ann(LogPolarAnnulus{-1, 0, 4, 6});
  CHECK(ann.nodes() == 5 * 6);
  const int k = ann.index(2, 0);
  CHECK(ann.stencil(k).s == ann.index(2, 5));
  CHECK(ann.is_boundary(ann.index(0, 3)));
  CHECK_FALSE(ann.is_boundary(ann.index(1, 0)));
  const Grid rect(Rectangle{0, 1, 0, 2, 4, 8});
  CHECK_THAT(rect.h2(), WithinAbs(0.25, 1e-15));
  CHECK(rect.is_boundary(rect.index(2, 0)));
  CHECK_THROWS_AS(Grid(Rectangle{1, 0, 0, 1, 4, 4}), InputError);
  CHECK_THROWS_AS(Grid(LogPolarAnnulus{-1, 0, 4, 2}), InputError);
  CHECK_THROWS_AS(Grid(Radial{0, 1, 1}), InputError);

  // pole on the grid
  const RootSystem a1 = make("A1");
  HiggsCoefficient pole;
  pole.f = {LaurentSeries::monomial(1.0, -1), LaurentSeries::constant(1.0)};
  const TodaProblem pp{a1, Rectangle{-1, 1, -1, 1, 4, 4}, pole, {Boundary::Kind::Constant, {0.0}, {}, {}, {}}, 1.0, {}};
  CHECK_THROWS_AS(solve_dirichlet(pp), InputError);
  TodaProblem neg = pp;
  neg.higgs = HiggsCoefficient::constant(real_b({1, 1}));
  neg.t = -1;
  CHECK_THROWS_AS(solve_dirichlet(neg), InputError);
  TodaProblem shape = neg;
  shape.t = 1;
  CHECK_THROWS_AS(toda_residual(shape, Field::Zero(2, 25)), InputError);
  TodaProblem nan = shape;
  nan.boundary.values = {std::nan("")};
  CHECK_THROWS_AS(solve_dirichlet(nan), InputError);
}

TEST_CASE("non-convergence returns the best iterate") {
  TodaProblem p = constant_problem("A2", real_b({1, 1, 1}), {1.0, -1.0}, 2.0, 8);
  p.solver.max_iter = 2;
  const TodaSolution s = solve_dirichlet(p);
  CHECK_FALSE(s.converged);
  CHECK_FALSE(s.message.empty());
  CHECK(s.residual == *std::min_element(s.residual_history.begin(), s.residual_history.end()));
}

TEST_CASE("o-order of Laurent data") {
  const RootSystem a2 = make("A2");
  CHECK(o_order(a2, HiggsCoefficient::homogeneous(a2)) == 0);
  CHECK(o_order(a2, HiggsCoefficient::constant(real_b({1, 1, 1}))) == 0);
  HiggsCoefficient h = HiggsCoefficient::homogeneous(a2);
  h.f[1] = LaurentSeries{};
  CHECK_FALSE(o_order(a2, h).has_value());
  const RootSystem g2 = make("G2");
  HiggsCoefficient g = HiggsCoefficient::constant(real_b({1, 1, 1}));
  g.f[0] = LaurentSeries::monomial(1.0, 1);
  CHECK(o_order(g2, g) == 3);
}
