#include "slitsurf/cli.hpp"

#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "slitsurf/builtins.hpp"
#include "slitsurf/experiments.hpp"
#include "slitsurf/flows.hpp"
#include "slitsurf/io.hpp"
#include "slitsurf/nps.hpp"

namespace slitsurf {

namespace {

using nlohmann::json;

std::vector<Vec2> parse_chain(const std::string& text) {
  std::vector<Vec2> spine;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, '|')) {
    auto comma = part.find(',');
    if (comma == std::string::npos) throw IoError("chain entry needs 'x,y': " + part);
    auto trim = [](std::string v) {
      v.erase(0, v.find_first_not_of(" \t"));
      v.erase(v.find_last_not_of(" \t") + 1);
      return v;
    };
    spine.emplace_back(rat_from_string(trim(part.substr(0, comma))),
                       rat_from_string(trim(part.substr(comma + 1))));
  }
  return spine;
}

std::vector<Rat> parse_grid(const std::string& text) {
  std::vector<Rat> grid;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) grid.push_back(rat_from_string(part));
  return grid;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-")
    std::cout << content;
  else
    write_file(out_path, content);
}

Involution involution_for(const Surface& s, int slit_edge) {
  auto tau = find_involution(s, slit_edge);
  if (!tau) throw SurfaceError("surface admits no combinatorial involution");
  return *tau;
}

json cert_json(const CylinderCert& c) {
  json j;
  j["boundary"] = {rat_to_string(c.boundary.hol.x), rat_to_string(c.boundary.hol.y)};
  j["crossing"] = {rat_to_string(c.crossing.hol.x), rat_to_string(c.crossing.hol.y)};
  j["apex"] = {rat_to_string(c.apex.x), rat_to_string(c.apex.y)};
  j["circumference_sq"] = rat_to_string(c.circumference_sq);
  j["area"] = rat_to_string(c.area);
  j["contains_slit"] = c.contains_slit;
  return j;
}

int run(int argc, const char* const* argv) {
  CLI::App app{"exact counting on hyperelliptic translation surfaces with a marked slit"};
  app.require_subcommand(1);

  std::string surface_path, out_path;
  std::string format = "csv";
  int slit_edge = -1;
  int threads = 1;

  auto add_common = [&](CLI::App* cmd, bool needs_slit) {
    cmd->add_option("--surface", surface_path, "surface JSON file")->required();
    cmd->add_option("--out", out_path, "output file ('-' = stdout)");
    if (needs_slit) cmd->add_option("--slit", slit_edge, "slit edge id")->required();
    return cmd;
  };

  // build
  auto* cmd_build = app.add_subcommand("build", "construct a surface file");
  std::string build_name, build_chain;
  cmd_build->add_option("--name", build_name, "builtin surface name");
  cmd_build->add_option("--chain", build_chain, "spine vectors 'x,y | x,y | ...'");
  cmd_build->add_option("--out", out_path, "output file ('-' = stdout)");

  // validate
  auto* cmd_validate = app.add_subcommand("validate", "check all surface invariants");
  cmd_validate->add_option("--surface", surface_path)->required();

  // enumerate
  auto* cmd_enum = app.add_subcommand("enumerate", "saddle connections up to length L");
  std::string L_text = "1";
  add_common(cmd_enum, false);
  cmd_enum->add_option("--slit", slit_edge, "slit edge id (optional)");
  cmd_enum->add_option("--L", L_text, "length bound (decimal or p/q)")->required();
  cmd_enum->add_option("--threads", threads);
  cmd_enum->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  // flow
  auto* cmd_flow = app.add_subcommand("flow", "apply the horocycle or diagonal flow");
  std::string horo_text, dilate_text;
  add_common(cmd_flow, false);
  cmd_flow->add_option("--horocycle", horo_text, "shear time s");
  cmd_flow->add_option("--dilate", dilate_text, "dilation factor p/q");

  // nps
  auto* cmd_nps = app.add_subcommand("nps", "find a simple cylinder containing the slit");
  add_common(cmd_nps, true);

  // decompose
  auto* cmd_dec = app.add_subcommand("decompose", "parallelogram decomposition");
  add_common(cmd_dec, true);

  // count
  auto* cmd_count = app.add_subcommand("count", "growth counts over a length grid");
  std::string grid_text;
  add_common(cmd_count, true);
  cmd_count->add_option("--grid", grid_text, "comma separated lengths")->required();
  cmd_count->add_option("--threads", threads);
  cmd_count->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  // cylinders
  auto* cmd_cyl = app.add_subcommand("cylinders", "cylinder growth fit");
  add_common(cmd_cyl, true);
  cmd_cyl->add_option("--grid", grid_text, "comma separated lengths")->required();

  // triangles
  auto* cmd_tri = app.add_subcommand("triangles", "triangle counts per dyadic size");
  long dj_lo = 1, dj_hi = 8;
  add_common(cmd_tri, true);
  cmd_tri->add_option("--djlo", dj_lo, "smallest j - ell");
  cmd_tri->add_option("--djhi", dj_hi, "largest j - ell");

  // badtimes
  auto* cmd_bad = app.add_subcommand("badtimes", "measure bad horocycle times");
  std::string T_text = "256", m0_text, eps_text;
  add_common(cmd_bad, true);
  cmd_bad->add_option("--T", T_text, "window parameter T");
  cmd_bad->add_option("--m0", m0_text, "badness threshold m0 (overrides default)");
  cmd_bad->add_option("--eps", eps_text, "epsilon (with the default m0 formula)");

  // directions
  auto* cmd_dir = app.add_subcommand("directions", "direction tree of successions");
  int depth = 1;
  add_common(cmd_dir, true);
  cmd_dir->add_option("--L", L_text, "length bound")->required();
  cmd_dir->add_option("--depth", depth, "succession depth");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (cmd_build->parsed()) {
      Surface s;
      int slit_hint = -1;
      if (!build_name.empty()) {
        Builtin b = builtin_surface(build_name);
        s = b.surface;
        slit_hint = b.slit_edge;
      } else if (!build_chain.empty()) {
        s = chain_surface(parse_chain(build_chain));
        slit_hint = chain_slit_edge(s);
      } else {
        std::cerr << "build needs --name or --chain\n";
        return 1;
      }
      emit(out_path, surface_to_json(s));
      std::cerr << "slit_edge: " << slit_hint << "\n";
      return 0;
    }

    if (cmd_validate->parsed()) {
      Surface s = surface_from_json(read_file(surface_path));
      Diagnostics d = validate(s);
      if (!d.ok) {
        std::cerr << d.message << "\n";
        return 2;
      }
      StratumSignature sig = stratum(s);
      std::cout << "ok genus=" << sig.genus << " dim_c=" << sig.dim_c << " kappa=";
      for (size_t i = 0; i < sig.kappa.size(); ++i)
        std::cout << (i ? "," : "") << sig.kappa[i];
      std::cout << " area=" << rat_to_string(area(s)) << "\n";
      return 0;
    }

    Surface s = surface_from_json(read_file(surface_path));

    if (cmd_enum->parsed()) {
      Rat L = rat_from_string(L_text);
      EnumResult r;
      const Involution* taup = nullptr;
      Involution tau;
      if (slit_edge >= 0) {
        r = enumerate_sc(make_slit(s, slit_edge), L * L, threads);
        auto t = find_involution(s, slit_edge);
        if (t) {
          tau = *t;
          taup = &tau;
        }
      } else {
        r = enumerate_sc(s, L * L, threads);
        auto t = find_involution(s, std::nullopt);
        if (t) {
          tau = *t;
          taup = &tau;
        }
      }
      if (format == "csv") {
        emit(out_path, enum_to_csv(s, r, taup));
      } else {
        json j = json::array();
        for (const auto& sc : r.conns) {
          json row;
          row["start_vertex"] = s.vertex_at(sc.start);
          row["hol"] = {rat_to_string(sc.hol.x), rat_to_string(sc.hol.y)};
          row["len_sq"] = rat_to_string(norm_sq(sc.hol));
          row["size_j"] = size_of(sc.hol);
          if (taup) row["invariant"] = is_invariant(*taup, sc);
          j.push_back(row);
        }
        emit(out_path, j.dump(2) + "\n");
      }
      return 0;
    }

    if (cmd_flow->parsed()) {
      if (!horo_text.empty())
        s = horocycle(s, rat_from_string(horo_text));
      else if (!dilate_text.empty())
        s = teichmuller(s, rat_from_string(dilate_text));
      else {
        std::cerr << "flow needs --horocycle or --dilate\n";
        return 1;
      }
      emit(out_path.empty() ? surface_path : out_path, surface_to_json(s));
      return 0;
    }

    Involution tau = involution_for(s, slit_edge);

    if (cmd_nps->parsed()) {
      NpsResult r = nps_find_simple_cylinder(s, tau, slit_edge);
      json j;
      j["iterations"] = r.iterations;
      j["trace"] = json::array();
      for (const auto& st : r.trace) {
        json step;
        step["rho"] = {rat_to_string(st.rho_hol.x), rat_to_string(st.rho_hol.y)};
        step["sigma"] = {rat_to_string(st.sigma_hol.x), rat_to_string(st.sigma_hol.y)};
        step["shear_time"] = rat_to_string(st.shear_time);
        step["excised_kappa"] = st.excised_kappa;
        step["periodic_restart"] = st.periodic_restart;
        step["perturb"] = rat_to_string(st.perturb_used);
        j["trace"].push_back(step);
      }
      j["certificate"] = cert_json(r.cert);
      emit(out_path, j.dump(2) + "\n");
      return 0;
    }

    if (cmd_dec->parsed()) {
      auto pgrams = parallelogram_decomposition(s, tau, slit_edge);
      json j = json::array();
      for (const auto& p : pgrams) {
        json row;
        row["u"] = {rat_to_string(p.u.x), rat_to_string(p.u.y)};
        row["w"] = {rat_to_string(p.w.x), rat_to_string(p.w.y)};
        row["area"] = rat_to_string(p.area);
        j.push_back(row);
      }
      emit(out_path, j.dump(2) + "\n");
      return 0;
    }

    if (cmd_count->parsed()) {
      auto grid = parse_grid(grid_text);
      auto recs = run_growth(make_slit(s, slit_edge), tau, grid, threads);
      if (format == "csv") {
        emit(out_path, growth_to_csv(recs));
      } else {
        json j = json::array();
        for (const auto& r : recs) {
          json row;
          row["L"] = r.L;
          row["count_all"] = r.count_all;
          row["count_cyl"] = r.count_cyl;
          row["count_noninv"] = r.count_noninv;
          row["count_inv"] = r.count_inv;
          j.push_back(row);
        }
        emit(out_path, j.dump(2) + "\n");
      }
      return 0;
    }

    if (cmd_cyl->parsed()) {
      auto fit = run_cylinder_linear(make_slit(s, slit_edge), tau, parse_grid(grid_text));
      std::ostringstream os;
      os << "slope,intercept,max_residual,points\n"
         << fit.slope << ',' << fit.intercept << ',' << fit.max_residual << ','
         << fit.points_used << "\n";
      emit(out_path, os.str());
      return 0;
    }

    if (cmd_tri->parsed()) {
      auto rep = run_triangle_bound(make_slit(s, slit_edge), tau, dj_lo, dj_hi);
      emit(out_path, triangle_report_to_csv(rep));
      return 0;
    }

    if (cmd_bad->parsed()) {
      NormalizedSlit norm = normalize_slit_horizontal(make_slit(s, slit_edge));
      BadnessConfig cfg = BadnessConfig::defaults(stratum(s).dim_c);
      if (!eps_text.empty()) {
        cfg.eps = rat_from_string(eps_text);
        cfg.m0 = cfg.eps * cfg.eps / Rat(4096 * stratum(s).dim_c);
      }
      if (!m0_text.empty()) cfg.m0 = rat_from_string(m0_text);
      auto rep = run_bad_times(norm.s, tau, rat_from_string(T_text), cfg);
      std::ostringstream os;
      os << "window_lo,window_hi,bad_measure,ratio,available,bad\n"
         << rat_to_string(rep.window_lo) << ',' << rat_to_string(rep.window_hi) << ','
         << rat_to_string(rep.bad_measure) << ',' << rat_to_string(rep.ratio) << ','
         << rep.available_count << ',' << rep.bad_count << "\n";
      emit(out_path, os.str());
      return 0;
    }

    if (cmd_dir->parsed()) {
      auto rep = run_direction_tree(s, tau, slit_edge, rat_from_string(L_text), depth);
      emit(out_path, directions_to_csv(rep));
      return 0;
    }

    std::cerr << "no subcommand\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int cli_main(int argc, const char* const* argv) { return run(argc, argv); }

}  // namespace slitsurf
