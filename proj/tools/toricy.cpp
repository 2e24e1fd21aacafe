// toricy command line.

#include "toricy/toricy.hpp"

#include "CLI11.hpp"

#include <iostream>

using namespace toricy;

namespace {

Json flags_json(const ClassificationFlags& c) {
  Json j;
  j["lattice"] = c.is_lattice;
  j["origin_interior"] = c.has_origin_interior;
  j["qfano"] = c.is_qfano;
  j["canonical"] = c.is_canonical;
  j["reflexive"] = c.is_reflexive;
  if (c.non_lattice_vertex) j["non_lattice_vertex"] = to_json(std::span<const Rational>(*c.non_lattice_vertex));
  if (c.non_primitive_vertex) j["non_primitive_vertex"] = to_json(std::span<const Integer>(*c.non_primitive_vertex));
  if (c.extra_interior_point) j["extra_interior_point"] = to_json(std::span<const Integer>(*c.extra_interior_point));
  return j;
}

Json variety_json(const ToricVarietyData& x) {
  Json j;
  j["rank"] = x.rank;
  Json rays = Json::array();
  for (const auto& r : x.rays) rays.push_back(to_json(std::span<const Integer>(r)));
  j["rays"] = rays;
  j["grading"] = to_json(x.grading);
  if (x.torsion_grading.rows()) j["torsion_grading"] = to_json(x.torsion_grading);
  j["class_group"] = x.class_group.to_string();
  return j;
}

Json points_json(const std::vector<IntVector>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(to_json(std::span<const Integer>(p)));
  return a;
}

Json group_json(const DiagonalGroupPresentation& g) {
  Json j;
  j["structure"] = g.structure.to_string();
  Json gens = Json::array();
  for (const auto& v : g.generators) gens.push_back(to_json(std::span<const Rational>(v)));
  j["generators"] = gens;
  return j;
}

Json hodge_json(const HodgePair& h) { return Json{{"h11", h.h11}, {"h21", h.h21}}; }

Json family_json(const FamilyDescription& f) {
  Json j;
  j["dual"] = f.dual;
  j["calabi_yau"] = f.calabi_yau;
  j["ambient"] = variety_json(f.ambient);
  j["support"] = points_json(f.support);
  return j;
}

// Theta's lattice points via monomials: u = (a - 1) P_sel^{-T}
std::vector<IntVector> theta_points(const ToricVarietyData& x, const std::vector<IntVector>& exps) {
  auto sel = independent_rows(x.p_matrix);
  RatMatrix pinv_t = inverse(to_rational(x.p_matrix.select_rows(sel)))->transpose();
  std::vector<IntVector> pts;
  for (const auto& a : exps) {
    RatVector rhs(x.rank);
    for (std::size_t k = 0; k < x.rank; ++k) rhs[k] = a[sel[k]] - 1;
    pts.push_back(to_integer(row_times<Rational, Rational>(rhs, pinv_t)));
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

int cmd_wps_theta(const std::string& weights, bool points, bool json) {
  WeightSystem w = WeightSystem::parse(weights);
  ToricVarietyData x = wps(w);
  RationalPolytope theta = anticanonical_polytope(x);
  auto pts = theta.cached_lattice_points();
  RationalPolytope bar = hull(pts);
  auto c = classify(bar, &pts);
  if (json) {
    Json j;
    j["weights"] = w.to_string();
    j["variety"] = variety_json(x);
    j["theta"] = polytope_json(theta);
    j["theta_lattice"] = theta.is_lattice();
    j["theta_points"] = pts.size();
    if (points) j["points"] = points_json(pts);
    j["hull"] = polytope_json(bar);
    j["hull_flags"] = flags_json(c);
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  std::cout << "weights " << w.to_string() << "\ntheta\n";
  write_polytope(std::cout, theta);
  std::cout << "theta lattice " << theta.is_lattice() << "\nlattice points " << pts.size() << '\n';
  if (points)
    for (const auto& p : pts) std::cout << "  " << to_string(std::span<const Integer>(p)) << '\n';
  std::cout << "hull of lattice points\n";
  write_polytope(std::cout, bar);
  std::cout << "hull lattice " << c.is_lattice << " ip " << c.has_origin_interior << " qfano " << c.is_qfano
            << " canonical " << c.is_canonical << " reflexive " << c.is_reflexive << '\n';
  return 0;
}

int cmd_analyze(const std::string& weights, const std::string& support, bool json) {
  WeightSystem w = WeightSystem::parse(weights);
  ToricVarietyData x = wps(w);
  auto exps = anticanonical_exponents(w);
  auto pts = theta_points(x, exps);
  RationalPolytope bar = hull(pts);
  if (!bar.is_full_dimensional() || !bar.origin_interior()) {
    std::cerr << "analyze: origin is not interior to the hull of Theta's lattice points\n";
    return 1;
  }
  std::vector<IntVector> sup_pts = pts, sup_exps = exps;
  if (support == "hull") {
    sup_pts.clear();
    sup_exps.clear();
    for (const auto& v : bar.vertices()) {
      sup_pts.push_back(to_integer(v));
      sup_exps.push_back(monomial_exponents(x, sup_pts.back()));
    }
  }
  FamilyDatum fd = FamilyDatum::make(x, bar, sup_pts);
  RegularityReport rep = regularity_report(fd);
  QuasismoothResult qs = quasismooth_general_wps(w, sup_exps);
  Json j;
  j["weights"] = w.to_string();
  j["support"] = support;
  j["support_size"] = sup_pts.size();
  j["irreducible"] = rep.irreducible;
  j["well_formed"] = rep.well_formed;
  j["normal_sufficient"] = rep.normal_sufficient ? "yes" : "unknown";
  j["canonical_newton"] = rep.canonical_newton;
  j["conjectural_witnesses"] = points_json(rep.conjectural_witnesses);
  Json off = Json::array();
  for (const auto& o : rep.offending_pairs) off.push_back(Json{{"i", o.i}, {"j", o.j}, {"clause", o.clause}});
  j["offending_pairs"] = off;
  j["non_boundary_rays"] = rep.non_boundary_rays;
  j["quasismooth"] = qs.quasismooth;
  j["quasismooth_witness"] = qs.witness;
  j["wellformed_wps_gcd"] = wellformed_wps_gcd(w);
  if (json) {
    std::cout << j.dump(2) << '\n';
  } else {
    for (auto it = j.begin(); it != j.end(); ++it) std::cout << it.key() << ' ' << it.value().dump() << '\n';
  }
  return 0;
}

int cmd_goodpair_dual(const std::string& f1, const std::string& f2, bool json) {
  GoodPair gp = good_pair(read_polytope_file(f1), read_polytope_file(f2));
  GoodPair dp = polar_pair(gp);
  auto [prim, dual] = families(gp);
  Json j;
  j["batyrev_case"] = is_batyrev_case(gp);
  j["polar_pair"] = Json{{"delta1", polytope_json(dp.delta1)}, {"delta2", polytope_json(dp.delta2)}};
  j["primal_family"] = family_json(prim);
  j["dual_family"] = family_json(dual);
  if (json) {
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  std::cout << "batyrev case " << is_batyrev_case(gp) << "\npolar delta1\n";
  write_polytope(std::cout, dp.delta1);
  std::cout << "polar delta2\n";
  write_polytope(std::cout, dp.delta2);
  std::cout << "primal support " << prim.support.size() << " ambient class group " << prim.ambient.class_group.to_string()
            << "\ndual support " << dual.support.size() << " ambient class group " << dual.ambient.class_group.to_string()
            << '\n';
  return 0;
}

int cmd_bhk_transpose(const std::string& matrix, const std::string& group, bool json) {
  IntMatrix a = read_matrix_file(matrix);
  BhkDatum bd = recover_datum(a);
  if (!group.empty()) bd = make_datum(bd.ambient, bd.monomials, read_matrix_file(group));
  BhkDatum d = transpose(bd);
  DualityCheck tb = verify_duality(bd);
  Json j;
  j["ambient"] = variety_json(bd.ambient);
  j["monomials"] = points_json(bd.monomials);
  j["group"] = group_json(group_elements(bd));
  j["symmetry_group"] = group_json(symmetry_group(bd));
  j["dual_matrix"] = to_json(d.a_matrix);
  j["dual_ambient"] = variety_json(d.ambient);
  j["dual_group"] = group_json(group_elements(d));
  if (a.rows() == a.cols()) {
    try {
      auto cd = classical_dual_weights(a);
      j["classical_dual_weights"] = to_json(std::span<const Integer>(cd.weights));
    } catch (const PreconditionError&) {
    }
  }
  j["duality"] = tb.holds;
  j["duality_detail"] = tb.detail;
  if (json) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "dual matrix\n";
    write_matrix(std::cout, d.a_matrix);
    std::cout << "dual class group " << d.ambient.class_group.to_string() << "\ndual grading\n";
    write_matrix(std::cout, d.ambient.grading);
    std::cout << "dual group " << j["dual_group"].dump() << "\nduality " << (tb.holds ? "holds" : "FAILS") << '\n';
  }
  return tb.holds ? 0 : 2;
}

int cmd_hodge(const std::string& f) {
  std::cout << to_string(batyrev_hodge(read_polytope_file(f))) << '\n';
  return 0;
}

int cmd_mirror(const std::string& f1, const std::string& f2, bool json) {
  auto v = mirror_test(good_pair(read_polytope_file(f1), read_polytope_file(f2)));
  if (json)
    std::cout << Json{{"passes", v.passes}, {"primal", hodge_json(v.primal)}, {"dual", hodge_json(v.dual)}}.dump(2)
              << '\n';
  else
    std::cout << (v.passes ? "pass" : "fail") << "\nprimal " << to_string(v.primal) << "\ndual " << to_string(v.dual)
              << '\n';
  return 0;
}

int cmd_survey(std::size_t dim, long max_w, const std::string& format, unsigned jobs) {
  auto ws = enumerate_normalized_weights(dim, max_w);
  auto recs = run_survey(ws, jobs);
  bool bad = false;
  for (const auto& r : recs)
    if (!r.consistency_failures.empty()) bad = true;
  auto rows = table1_from(recs, max_w);
  if (format == "json") {
    Json j;
    Json arr = Json::array();
    for (const auto& r : recs)
      arr.push_back(Json{{"weights", r.weights.to_string()}, {"F", r.F}, {"R", r.R}, {"C", r.C}, {"Q", r.Q},
                         {"bucket", to_string(r.bucket)}, {"theta_points", r.theta_points},
                         {"hull_vertices", r.hull_vertices}, {"consistency_failures", r.consistency_failures}});
    j["records"] = arr;
    Json t = Json::array();
    for (const auto& r : rows)
      t.push_back(Json{{"bound", r.bound}, {"F", r.F}, {"R", r.R}, {"Q_not_R", r.Q_not_R},
                       {"C_not_R_not_Q", r.C_not_R_not_Q}});
    j["table"] = t;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "weights,F,R,C,Q,bucket,theta_points,hull_vertices\n";
    for (const auto& r : recs)
      std::cout << '"' << r.weights.to_string() << "\"," << r.F << ',' << r.R << ',' << r.C << ',' << r.Q << ','
                << to_string(r.bucket) << ',' << r.theta_points << ',' << r.hull_vertices << '\n';
    // cumulative table follows after a blank line
    std::cout << "\nbound,F,R,Q&!R,C&!R&!Q\n";
    for (const auto& r : rows)
      std::cout << r.bound << ',' << r.F << ',' << r.R << ',' << r.Q_not_R << ',' << r.C_not_R_not_Q << '\n';
  }
  if (bad) {
    for (const auto& r : recs)
      for (const auto& f : r.consistency_failures) std::cerr << r.weights.to_string() << ": " << f << '\n';
    return 2;
  }
  return 0;
}

int cmd_table1(long max_w, unsigned jobs) {
  auto recs = run_survey(enumerate_normalized_weights(5, max_w), jobs);
  std::cout << "bound     F     R   Q&!R  C&!R&!Q\n";
  for (const auto& r : table1_from(recs, max_w))
    std::printf("%5ld %5zu %5zu %6zu %8zu\n", r.bound, r.F, r.R, r.Q_not_R, r.C_not_R_not_Q);
  for (const auto& r : recs)
    if (!r.consistency_failures.empty()) return 2;
  return 0;
}

int cmd_census(long bound, unsigned jobs) {
  Census c = dim3_census(bound, jobs);
  std::cout << "bound " << c.bound << "\ncanonical " << c.canonical << "\nR&C&Q " << c.rcq << "\nF " << c.fano << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact lattice-polytope toolkit for Calabi-Yau hypersurfaces in toric varieties"};
  app.require_subcommand(1);
  bool json = false;
  unsigned jobs = 1;

  auto* wps_cmd = app.add_subcommand("wps", "weighted projective spaces");
  wps_cmd->require_subcommand(1);
  auto* theta = wps_cmd->add_subcommand("theta", "anticanonical polytope of P(w)");
  std::string weights;
  bool points = false;
  theta->add_option("weights", weights, "comma-separated weights")->required();
  theta->add_flag("--points", points, "list the lattice points");
  theta->add_flag("--json", json);

  auto* analyze = app.add_subcommand("analyze", "regularity of the general anticanonical member");
  std::string support = "full";
  analyze->add_option("--weights", weights)->required();
  analyze->add_option("--support", support)->check(CLI::IsMember({"full", "hull"}));
  analyze->add_flag("--json", json);

  auto* gp = app.add_subcommand("goodpair", "good pairs");
  gp->require_subcommand(1);
  auto* gpd = gp->add_subcommand("dual", "polar pair and both families");
  std::string d1, d2;
  gpd->add_option("--delta1", d1)->required()->check(CLI::ExistingFile);
  gpd->add_option("--delta2", d2)->required()->check(CLI::ExistingFile);
  gpd->add_flag("--json", json);

  auto* bhk = app.add_subcommand("bhk", "BHK transposition");
  bhk->require_subcommand(1);
  auto* bt = bhk->add_subcommand("transpose", "dual datum of an exponent matrix");
  std::string mat, glat;
  bt->add_option("--matrix", mat)->required()->check(CLI::ExistingFile);
  bt->add_option("--group-lattice", glat, "basis of M_G in the recovered coordinates")->check(CLI::ExistingFile);
  bt->add_flag("--json", json);

  auto* hodge = app.add_subcommand("hodge", "h11 h21 of a rank-4 reflexive polytope");
  std::string poly;
  hodge->add_option("--polytope", poly)->required()->check(CLI::ExistingFile);

  auto* mirror = app.add_subcommand("mirror-test", "topological mirror test for a good pair");
  mirror->add_option("--delta1", d1)->required()->check(CLI::ExistingFile);
  mirror->add_option("--delta2", d2)->required()->check(CLI::ExistingFile);
  mirror->add_flag("--json", json);

  auto* survey = app.add_subcommand("survey", "classify all normalized weight systems");
  std::size_t dim = 5;
  long max_w = 10;
  std::string format = "csv";
  survey->add_option("--dim", dim)->check(CLI::Range(1, 8));
  survey->add_option("--max-w", max_w)->check(CLI::PositiveNumber);
  survey->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  survey->add_option("--jobs", jobs);

  auto* t1 = app.add_subcommand("table1", "cumulative counts F, R, Q&!R, C&!R&!Q in dimension 5");
  t1->add_option("--max-w", max_w)->check(CLI::PositiveNumber);
  t1->add_option("--jobs", jobs);

  auto* census = app.add_subcommand("census", "dimension-3 weighted projective spaces with canonical singularities");
  long bound = 50;
  census->add_option("--bound", bound)->check(CLI::PositiveNumber);
  census->add_option("--jobs", jobs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // usage errors share the bad-input exit code; --help still exits 0
    return app.exit(e) == 0 ? 0 : 1;
  }
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());

  try {
    if (*theta) return cmd_wps_theta(weights, points, json);
    if (*analyze) return cmd_analyze(weights, support, json);
    if (*gpd) return cmd_goodpair_dual(d1, d2, json);
    if (*bt) return cmd_bhk_transpose(mat, glat, json);
    if (*hodge) return cmd_hodge(poly);
    if (*mirror) return cmd_mirror(d1, d2, json);
    if (*survey) return cmd_survey(dim, max_w, format, jobs);
    if (*t1) return cmd_table1(max_w, jobs);
    if (*census) return cmd_census(bound, jobs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
