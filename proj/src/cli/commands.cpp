#include "polyrec/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "polyrec/arcs.hpp"
#include "polyrec/construct.hpp"
#include "polyrec/error.hpp"
#include "polyrec/generators.hpp"
#include "polyrec/io.hpp"
#include "polyrec/profile.hpp"
#include "polyrec/smooth.hpp"
#include "polyrec/spectral.hpp"
#include "polyrec/weyl.hpp"

namespace polyrec::cli {

namespace {

using json = nlohmann::ordered_json;

struct SetInput {
  std::string path;
  std::string gen;
  std::int64_t universe = 0;
  std::uint64_t seed = 0;

  void attach(CLI::App* app) {
    app->add_option("--set", path, "set file (#N=<int> header, one member per line)");
    app->add_option("--gen", gen, "generator: full | random:<δ> | ap:<q>+<j> | interval:<a>-<b> | union(..)");
    app->add_option("--N", universe, "universe size for --gen");
    app->add_option("--seed", seed, "generator seed");
  }

  DenseSet load() const {
    if (!path.empty()) return io::read_set_file(path);
    if (gen.empty()) throw ParseError("one of --set or --gen is required");
    if (universe < 1) throw ParseError("--gen needs --N >= 1");
    return SetGenerator::parse(gen).generate(universe, seed);
  }
};

struct GridInput {
  std::string path;
  int k = 2;
  std::int64_t side = 0;
  std::string density = "1/2";
  std::uint64_t seed = 0;

  void attach(CLI::App* app) {
    app->add_option("--grid", path, "grid file (#k=<int> #M=<int> header)");
    app->add_option("--k", k, "dimension for a generated grid");
    app->add_option("--M", side, "side for a generated grid");
    app->add_option("--density", density, "density for a generated grid");
    app->add_option("--seed", seed, "generator seed");
  }

  GridSet load() const {
    if (!path.empty()) return io::read_grid_file(path);
    if (side < 1) throw ParseError("one of --grid or --M is required");
    return gen_random_grid(k, side, parse_rational(density), seed);
  }
};

json rational_json(const Rational& r) { return to_string(r); }

json stats_json(const GapStats& s) {
  return {{"count", s.count},
          {"density", s.density},
          {"max_gap", s.max_gap},
          {"positive_count", s.positive_count},
          {"positive_density", s.positive_density},
          {"positive_max_gap", s.positive_max_gap}};
}

json header(const std::string& command) {
  return {{"schema_version", kSchemaVersion}, {"command", command}};
}

std::vector<Window> parse_windows(const std::string& text) {
  std::vector<Window> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ParseError("window must be <lambda>:<mu>, got '" + item + "'");
    Window w;
    if (w.lambda.set_str(item.substr(0, colon), 10) != 0 || w.mu.set_str(item.substr(colon + 1), 10) != 0) {
      throw ParseError("window must be <lambda>:<mu>, got '" + item + "'");
    }
    out.push_back(w);
  }
  if (out.empty()) throw ParseError("no windows given");
  return out;
}

BigInt parse_big(const std::string& text) {
  BigInt v;
  if (text.empty() || v.set_str(text, 10) != 0) throw ParseError("not an integer: '" + text + "'");
  return v;
}

std::string svg_polyline(const std::vector<double>& ys, const std::string& title) {
  const double width = 640, height = 320, pad = 30;
  double top = 0;
  for (double y : ys) top = std::max(top, y);
  if (top <= 0) top = 1;
  std::ostringstream s;
  s << std::setprecision(6);
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\">\n<title>" << title << "</title>\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<polyline fill=\"none\" stroke=\"black\" points=\"";
  const double span = ys.size() > 1 ? static_cast<double>(ys.size() - 1) : 1.0;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const double x = pad + (width - 2 * pad) * static_cast<double>(i) / span;
    const double y = height - pad - (height - 2 * pad) * ys[i] / top;
    s << (i ? " " : "") << x << ',' << y;
  }
  s << "\"/>\n</svg>\n";
  return s.str();
}

std::string svg_raster(const ReturnTimeSet& r) {
  const std::int64_t n = r.range_end + 1;
  const double cell = std::max(1.0, 640.0 / static_cast<double>(std::max<std::int64_t>(n, 1)));
  std::ostringstream s;
  s << std::setprecision(6);
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cell * static_cast<double>(n)
    << "\" height=\"40\">\n<title>return times</title>\n";
  for (auto t : r.times) {
    s << "<rect x=\"" << cell * static_cast<double>(t) << "\" y=\"0\" width=\"" << cell
      << "\" height=\"40\" fill=\"black\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

class Emitter {
 public:
  Emitter(std::ostream& fallback, std::string path) : fallback_(fallback), path_(std::move(path)) {}
  void write(const std::string& text) {
    if (path_.empty()) {
      fallback_ << text;
      return;
    }
    std::ofstream f(path_, std::ios::binary);
    if (!f) throw ContractViolation("cannot open output file " + path_);
    f << text;
  }
  void write(const json& j) { write(j.dump(2) + "\n"); }

 private:
  std::ostream& fallback_;
  std::string path_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"polyrec: polynomial recurrence toolkit"};
  app.require_subcommand(1);
  std::string out_path;
  unsigned threads = 0;
  app.add_option("--out", out_path, "write the artifact to this file instead of stdout");
  app.add_option("--threads", threads, "worker threads (sets POLYREC_THREADS)");

  std::function<void(Emitter&)> action;

  // profile / returns
  SetInput prof_in;
  std::string poly_text = "0,1", method = "direct", format = "csv", eps_text = "1/100";
  std::int64_t range_end = -1;
  auto* profile = app.add_subcommand("profile", "recurrence profile n -> |A ∩ (A+P(n))|");
  prof_in.attach(profile);
  profile->add_option("--poly", poly_text, "coefficients c1,...,ck of P");
  profile->add_option("--L", range_end, "last n (default floor(N^(1/k)))");
  profile->add_option("--method", method)->check(CLI::IsMember({"direct", "fft"}));
  profile->add_option("--format", format)->check(CLI::IsMember({"csv", "json", "svg"}));

  auto compute_profile = [&](const DenseSet& a, const Polynomial& p) {
    const std::int64_t l = range_end >= 0 ? range_end : integer_root(a.universe_size(), p.degree());
    return method == "fft" ? profile_fft(a, p, l) : profile_direct(a, p, l);
  };

  profile->callback([&] {
    action = [&](Emitter& em) {
      const DenseSet a = prof_in.load();
      const Polynomial p = Polynomial::parse(poly_text);
      const RecurrenceProfile prof = compute_profile(a, p);
      const double n = static_cast<double>(prof.universe_size);
      if (format == "csv") {
        std::ostringstream s;
        s << std::setprecision(17);
        s << "n,Pn,count,ratio\n";
        for (std::size_t i = 0; i < prof.counts.size(); ++i) {
          s << i << ',' << prof.shifts[i][0] << ',' << prof.counts[i] << ','
            << static_cast<double>(prof.counts[i]) / n << '\n';
        }
        em.write(s.str());
      } else if (format == "json") {
        json j = header("profile");
        j["universe_size"] = prof.universe_size;
        j["cardinality"] = prof.set_cardinality;
        j["poly"] = p.coeffs();
        j["range_end"] = prof.range_end();
        j["counts"] = prof.counts;
        em.write(j);
      } else {
        std::vector<double> ys;
        for (auto c : prof.counts) ys.push_back(static_cast<double>(c) / n);
        em.write(svg_polyline(ys, "recurrence profile"));
      }
    };
  });

  SetInput ret_in;
  auto* returns = app.add_subcommand("returns", "ε-optimal return times");
  ret_in.attach(returns);
  returns->add_option("--poly", poly_text);
  returns->add_option("--L", range_end);
  returns->add_option("--eps", eps_text, "ε as an exact rational");
  returns->add_option("--method", method)->check(CLI::IsMember({"direct", "fft"}));
  returns->add_option("--format", format)->check(CLI::IsMember({"json", "svg"}));
  returns->callback([&] {
    if (format == "csv") format = "json";
    action = [&](Emitter& em) {
      const DenseSet a = ret_in.load();
      const Polynomial p = Polynomial::parse(poly_text);
      const ReturnTimeSet r = optimal_returns(compute_profile(a, p), parse_rational(eps_text));
      if (format == "svg") {
        em.write(svg_raster(r));
        return;
      }
      json j = header("returns");
      j["epsilon"] = rational_json(r.epsilon);
      j["range_end"] = r.range_end;
      j["times"] = r.times;
      j["stats"] = stats_json(gap_stats(r));
      em.write(j);
    };
  });

  // weyl
  auto* weyl = app.add_subcommand("weyl", "Weyl sums");
  weyl->require_subcommand(1);
  std::int64_t lambda = 0, mu = 1, q = 1, samples = 64;
  int k = 1;
  std::uint64_t seed = 0;
  std::string alpha_text, eta_text = "1/2";

  auto* weyl_eval = weyl->add_subcommand("eval", "S_{λ,μ,q}(α)");
  weyl_eval->add_option("--lambda", lambda, "window start (default 0)");
  weyl_eval->add_option("--mu", mu)->required();
  weyl_eval->add_option("--q", q, "step divisor (default 1)");
  weyl_eval->add_option("--k", k);
  weyl_eval->add_option("--alpha", alpha_text, "comma separated rationals")->required();
  weyl_eval->callback([&] {
    action = [&](Emitter& em) {
      const TorusPoint alpha = TorusPoint::parse(alpha_text);
      if (alpha.dim() != k) throw ParseError("--alpha must have k coordinates");
      const auto s = q == 1 ? weyl_S_window(lambda, mu, alpha) : weyl_S_div(lambda, mu, q, alpha);
      json j = header("weyl eval");
      j["lambda"] = lambda;
      j["mu"] = mu;
      j["q"] = q;
      j["alpha"] = alpha.to_string();
      j["re"] = s.real();
      j["im"] = s.imag();
      em.write(j);
    };
  });

  auto* weyl_rel = weyl->add_subcommand("relations", "residuals of the three Weyl-sum relations");
  weyl_rel->add_option("--lambda", lambda)->required();
  weyl_rel->add_option("--mu", mu)->required();
  weyl_rel->add_option("--q", q);
  weyl_rel->add_option("--k", k);
  weyl_rel->add_option("--samples", samples);
  weyl_rel->add_option("--seed", seed);
  weyl_rel->callback([&] {
    action = [&](Emitter& em) {
      std::vector<TorusPoint> pts;
      std::uint64_t state = seed;
      for (std::int64_t i = 0; i < samples; ++i) pts.push_back(random_torus_point(k, state));
      const auto r = relation_residuals(lambda, mu, q, pts);
      json j = header("weyl relations");
      j["lambda"] = lambda;
      j["mu"] = mu;
      j["q"] = q;
      j["k"] = k;
      j["samples"] = samples;
      j["max_r1"] = r.max_r1;
      j["max_r2"] = r.max_r2;
      j["max_r3"] = r.max_r3;
      em.write(j);
    };
  });

  auto* weyl_scan = weyl->add_subcommand("scan", "sup |S_μ|/μ over sampled minor arcs");
  weyl_scan->add_option("--eta", eta_text);
  weyl_scan->add_option("--mu", mu)->required();
  weyl_scan->add_option("--k", k);
  weyl_scan->add_option("--samples", samples);
  weyl_scan->add_option("--seed", seed);
  weyl_scan->callback([&] {
    action = [&](Emitter& em) {
      const auto r = minor_arc_scan(parse_rational(eta_text), mu, k, samples, seed);
      json j = header("weyl scan");
      j["eta"] = eta_text;
      j["mu"] = mu;
      j["k"] = k;
      j["max_abs"] = r.max_abs;
      j["ratio"] = r.max_abs / static_cast<double>(mu);
      j["argmax"] = r.argmax.to_string();
      j["survivors"] = r.survivors;
      j["discarded"] = r.discarded;
      em.write(j);
    };
  });

  // arcs
  auto* arcs = app.add_subcommand("arcs", "major-arc geometry");
  arcs->require_subcommand(1);
  std::string lambda_text = "1", mu_text = "1", windows_text;
  auto* arcs_member = arcs->add_subcommand("member", "membership of α in the arc sets");
  arcs_member->add_option("--alpha", alpha_text)->required();
  arcs_member->add_option("--eta", eta_text)->required();
  arcs_member->add_option("--lambda", lambda_text)->required();
  arcs_member->add_option("--mu", mu_text)->required();
  arcs_member->callback([&] {
    action = [&](Emitter& em) {
      const TorusPoint alpha = TorusPoint::parse(alpha_text);
      const Rational eta = parse_rational(eta_text);
      const ArcSystem sys = ArcSystem::make(eta, alpha.dim(), parse_big(lambda_text), parse_big(mu_text));
      json j = header("arcs member");
      j["alpha"] = alpha.to_string();
      j["eta"] = rational_json(eta);
      j["radius"] = sys.radius;
      j["q_eta"] = sys.q.get_str();
      j["in_frak_M_mu"] = in_frak_M(alpha, eta, Rational(sys.mu), alpha.dim());
      j["in_outer"] = in_major_box(alpha, sys.outer());
      j["in_inner"] = in_major_box(alpha, sys.inner());
      j["in_omega"] = in_omega(alpha, sys);
      j["in_pulled_back_omega"] = in_pulled_back_omega(alpha, sys);
      if (4 * alpha.dim() * alpha.dim() * eta < 1) {
        const auto w = trapped_index(alpha, sys);
        if (w) {
          j["trapped"] = {{"axis", w->axis},
                          {"distance", rational_json(w->distance)},
                          {"lower", rational_json(w->lower)},
                          {"upper", rational_json(w->upper)}};
        } else {
          j["trapped"] = nullptr;
        }
      }
      em.write(j);
    };
  });

  auto* arcs_overlap = arcs->add_subcommand("overlap", "max number of pulled-back annuli containing α");
  arcs_overlap->add_option("--eta", eta_text)->required();
  arcs_overlap->add_option("--k", k);
  arcs_overlap->add_option("--windows", windows_text, "λ1:μ1,λ2:μ2,...")->required();
  arcs_overlap->add_option("--samples", samples);
  arcs_overlap->add_option("--seed", seed);
  arcs_overlap->callback([&] {
    action = [&](Emitter& em) {
      const Rational eta = parse_rational(eta_text);
      const auto windows = parse_windows(windows_text);
      validate_window_chain(eta, k, windows);
      std::vector<ArcSystem> systems;
      for (const auto& w : windows) systems.push_back(ArcSystem::make(eta, k, w.lambda, w.mu));
      std::mt19937_64 rng(seed);
      std::uint64_t state = seed ^ 0x9e3779b97f4a7c15ULL;
      int worst = 0;
      std::vector<std::int64_t> histogram(windows.size() + 1, 0);
      for (std::int64_t i = 0; i < samples; ++i) {
        // Alternate between points planted in some pulled-back annulus and
        // uniform rational points.
        const TorusPoint alpha = i % 2 == 0
                                     ? sample_pulled_back_omega(systems[static_cast<std::size_t>(i / 2) % systems.size()], rng)
                                     : random_torus_point(k, state);
        const int c = overlap_count(alpha, systems);
        ++histogram[static_cast<std::size_t>(c)];
        worst = std::max(worst, c);
      }
      json j = header("arcs overlap");
      j["eta"] = rational_json(eta);
      j["k"] = k;
      j["windows"] = windows.size();
      j["samples"] = samples;
      j["max_overlap"] = worst;
      j["bound"] = k;
      j["histogram"] = histogram;
      em.write(j);
    };
  });

  // spectral
  auto* spectral = app.add_subcommand("spectral", "Fourier-side identities");
  spectral->require_subcommand(1);
  GridInput grid_in_id, grid_in_mass;
  bool pulled_back = false;
  auto* sp_id = spectral->add_subcommand("identity", "average pair count: direct vs quadrature");
  grid_in_id.attach(sp_id);
  sp_id->add_option("--lambda", lambda)->required();
  sp_id->add_option("--mu", mu)->required();
  sp_id->callback([&] {
    action = [&](Emitter& em) {
      const GridSet b = grid_in_id.load();
      const auto r = average_count_identity(b, lambda, mu);
      const auto pl = plancherel_check(b);
      json j = header("spectral identity");
      j["k"] = b.dimension();
      j["M"] = b.side();
      j["cardinality"] = b.cardinality();
      j["lambda"] = lambda;
      j["mu"] = mu;
      j["direct"] = rational_json(r.direct);
      j["direct_value"] = to_double(r.direct);
      j["quadrature"] = r.quadrature;
      j["grid"] = r.grid;
      j["plancherel"] = {{"lhs", pl.lhs}, {"rhs", pl.rhs}};
      em.write(j);
    };
  });

  std::int64_t oversample = 8;
  auto* sp_mass = spectral->add_subcommand("mass", "∫_Ω |1̂_B|²: closed form vs Riemann sum");
  grid_in_mass.attach(sp_mass);
  sp_mass->add_option("--eta", eta_text)->required();
  sp_mass->add_option("--lambda", lambda_text)->required();
  sp_mass->add_option("--mu", mu_text)->required();
  sp_mass->add_flag("--pullback", pulled_back, "integrate over T_λ^{-1}Ω instead of Ω");
  sp_mass->add_option("--oversample", oversample);
  sp_mass->callback([&] {
    action = [&](Emitter& em) {
      const GridSet b = grid_in_mass.load();
      const ArcSystem sys =
          ArcSystem::make(parse_rational(eta_text), b.dimension(), parse_big(lambda_text), parse_big(mu_text));
      const BoxRegion region = omega_region(sys, pulled_back);
      const double closed = box_region_mass(b, region);
      const auto grid = riemann_grid(region, b.side(), oversample);
      const double riemann = riemann_mass(b, region, grid);
      json j = header("spectral mass");
      j["k"] = b.dimension();
      j["M"] = b.side();
      j["cardinality"] = b.cardinality();
      j["pullback"] = pulled_back;
      j["closed_form"] = closed;
      j["riemann"] = riemann;
      j["grid"] = grid;
      em.write(j);
    };
  });

  // dichotomy
  GridInput grid_in_dich;
  double c1 = 1.0;
  auto* dich = app.add_subcommand("dichotomy", "check the two-branch dichotomy for a grid set");
  grid_in_dich.attach(dich);
  dich->add_option("--eps", eps_text);
  dich->add_option("--eta", eta_text)->required();
  dich->add_option("--lambda", lambda)->required();
  dich->add_option("--mu", mu)->required();
  dich->add_option("--c1", c1, "constant in the first-branch threshold");
  dich->callback([&] {
    action = [&](Emitter& em) {
      const GridSet b = grid_in_dich.load();
      const auto r = dichotomy_report(b, parse_rational(eps_text), lambda, mu, parse_rational(eta_text),
                                      DichotomyOptions{c1});
      json j = header("dichotomy");
      j["delta"] = rational_json(r.delta);
      j["q_eta"] = r.q.get_str();
      j["radius"] = r.radius;
      j["outer_degenerate"] = r.outer_degenerate;
      j["branch1"] = {{"count", r.branch1.count}, {"threshold", r.branch1.threshold}, {"holds", r.branch1.holds}};
      j["branch2"] = {{"mass", r.branch2.mass}, {"threshold", r.branch2.threshold}, {"holds", r.branch2.holds}};
      j["either"] = r.branch1.holds || r.branch2.holds;
      em.write(j);
    };
  });

  // lift
  SetInput lift_in;
  std::string lift_eta, grid_out;
  auto* lift = app.add_subcommand("lift", "lift a 1-D set to the moment curve and verify the inclusion");
  lift_in.attach(lift);
  lift->add_option("--poly", poly_text);
  lift->add_option("--eps", eps_text);
  lift->add_option("--L", range_end)->required();
  lift->add_option("--eta", lift_eta, "tiling fraction (default ε/(20k))");
  lift->add_option("--grid-out", grid_out, "also write the lifted grid set here");
  lift->callback([&] {
    action = [&](Emitter& em) {
      const DenseSet a = lift_in.load();
      const Polynomial p = Polynomial::parse(poly_text);
      const Rational eps = parse_rational(eps_text);
      LiftOptions opt;
      if (!lift_eta.empty()) opt.eta = parse_rational(lift_eta);
      const LiftResult r = lift_finite(a, p, eps, range_end, opt);
      json j = header("lift");
      j["modulus"] = r.modulus;
      j["residue"] = r.residue;
      j["universe"] = r.universe;
      j["eta"] = rational_json(r.eta);
      j["side"] = r.side;
      j["n_prime"] = r.n_prime;
      j["tile_index"] = r.tile_index;
      j["tile_origin"] = r.tile_origin;
      j["offset"] = r.offset;
      j["class_size"] = r.class_size;
      j["q_size"] = r.q_size ? json(*r.q_size) : json(nullptr);
      j["b_prime_size"] = r.b_prime_size ? json(*r.b_prime_size) : json(nullptr);
      j["candidates_tried"] = r.candidates_tried;
      j["lifted_cardinality"] = r.lifted.cardinality();
      j["verified_through"] = r.verified_through;
      j["verified"] = verify_lift_inclusion(a, p, eps, range_end, r);
      if (!grid_out.empty()) {
        std::ofstream f(grid_out);
        if (!f) throw ContractViolation("cannot open " + grid_out);
        io::write_grid(f, r.lifted);
      }
      em.write(j);
    };
  });

  // counterexample
  auto* ce = app.add_subcommand("counterexample", "periodic set avoiding P-shifts on late windows");
  ce->require_subcommand(1);
  std::int64_t window_l = 1, j_max = 5, search_bound = 1'000'000;
  std::string desc_path;
  auto descriptor_json = [](const PeriodicSetDescriptor& d) {
    json j = header("counterexample build");
    j["a"] = d.a;
    j["L"] = d.L;
    j["M"] = d.M;
    j["period"] = d.period;
    j["block"] = {d.block_lo, d.block_hi};
    j["lambda_formula"] = d.lambda_formula();
    return j;
  };
  auto* ce_build = ce->add_subcommand("build", "construct the descriptor");
  ce_build->add_option("--poly", poly_text)->required();
  ce_build->add_option("--L", window_l)->required();
  ce_build->add_option("--search-bound", search_bound);
  ce_build->callback([&] {
    action = [&](Emitter& em) {
      em.write(descriptor_json(counterexample_build(Polynomial::parse(poly_text), window_l, search_bound)));
    };
  });
  auto* ce_verify = ce->add_subcommand("verify", "brute-force check of the descriptor");
  ce_verify->add_option("--poly", poly_text)->required();
  ce_verify->add_option("--L", window_l)->required();
  ce_verify->add_option("--jmax", j_max);
  ce_verify->add_option("--desc", desc_path, "descriptor JSON (default: build one)");
  ce_verify->callback([&] {
    action = [&](Emitter& em) {
      const Polynomial p = Polynomial::parse(poly_text);
      PeriodicSetDescriptor d;
      if (desc_path.empty()) {
        d = counterexample_build(p, window_l);
      } else {
        std::ifstream f(desc_path);
        if (!f) throw ParseError("cannot open " + desc_path);
        json in;
        try {
          in = json::parse(f);
          d.a = in.at("a").get<std::int64_t>();
          d.L = in.contains("L") ? in.at("L").get<std::int64_t>() : window_l;
          d.M = in.at("M").get<std::int64_t>();
          d.period = in.at("period").get<std::int64_t>();
          d.block_lo = in.at("block").at(0).get<std::int64_t>();
          d.block_hi = in.at("block").at(1).get<std::int64_t>();
        } catch (const json::exception& e) {
          throw ParseError(std::string("bad descriptor: ") + e.what());
        }
      }
      json j = header("counterexample verify");
      j["a"] = d.a;
      j["M"] = d.M;
      j["period"] = d.period;
      j["block"] = {d.block_lo, d.block_hi};
      j["jmax"] = j_max;
      j["verified"] = counterexample_verify(d, p, window_l, j_max);
      em.write(j);
    };
  });

  // experiment
  auto* exp = app.add_subcommand("experiment", "desk-scale experiments");
  exp->require_subcommand(1);
  std::int64_t exp_n = 10000;
  int trials = 20;
  std::string exp_gen = "random:1/2";
  auto* khin = exp->add_subcommand("khintchine", "density of ε-optimal return times over random sets");
  khin->add_option("--N", exp_n);
  khin->add_option("--poly", poly_text);
  khin->add_option("--eps", eps_text);
  khin->add_option("--trials", trials);
  khin->add_option("--seed", seed);
  khin->add_option("--gen", exp_gen);
  khin->add_option("--L", range_end);
  khin->callback([&] {
    action = [&](Emitter& em) {
      KhintchineConfig cfg;
      cfg.universe_size = exp_n;
      cfg.poly = Polynomial::parse(poly_text);
      cfg.epsilon = parse_rational(eps_text);
      cfg.trials = trials;
      cfg.seed = seed;
      cfg.generator = SetGenerator::parse(exp_gen);
      cfg.range_end = range_end;
      const auto s = khintchine_experiment(cfg);
      json j = header("experiment khintchine");
      j["N"] = exp_n;
      j["poly"] = cfg.poly.coeffs();
      j["epsilon"] = rational_json(cfg.epsilon);
      j["generator"] = cfg.generator.to_string();
      j["range_end"] = s.range_end;
      json t = json::array();
      for (const auto& tr : s.trials) {
        t.push_back({{"seed", tr.seed}, {"cardinality", tr.cardinality}, {"stats", stats_json(tr.stats)}});
      }
      j["trials"] = t;
      j["min_density"] = s.min_density;
      j["mean_density"] = s.mean_density;
      j["min_positive_density"] = s.min_positive_density;
      j["mean_positive_density"] = s.mean_positive_density;
      em.write(j);
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  if (threads > 0) ::setenv("POLYREC_THREADS", std::to_string(threads).c_str(), 1);
  if (!action) {
    err << "error: no command\n";
    return 1;
  }
  try {
    Emitter em(out, out_path);
    action(em);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::bad_alloc&) {
    err << "resource limit: out of memory\n";
    return 3;
  }
  return 0;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace polyrec::cli
