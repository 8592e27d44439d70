#include "slitsurf/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

namespace slitsurf {

namespace {

double rat_to_double(const Rat& r) { return mpq_get_d(r.get_mpq_t()); }

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

std::vector<CountRecord> run_growth(const SlitSurface& s, const Involution& tau,
                                    const std::vector<Rat>& grid_L, int threads) {
  if (grid_L.empty()) throw ExperimentError("empty grid");
  int d = stratum(s.s).dim_c;
  Rat beta_sq = norm_sq(s.slit_hol());
  double beta_len = std::sqrt(rat_to_double(beta_sq));
  std::vector<CountRecord> out(grid_L.size());
  std::vector<std::string> errors(grid_L.size());
  auto work = [&](size_t i) {
    try {
      const Rat& L = grid_L[i];
      if (sgn(L) <= 0) throw ExperimentError("nonpositive grid length");
      Rat L_sq = L * L;
      EnumResult r = enumerate_sc(s, L_sq, 1);
      CountRecord rec;
      rec.L_sq = L_sq;
      rec.L = rat_to_double(L);
      rec.count_all = static_cast<long>(r.conns.size());
      for (const auto& sc : r.conns)
        (is_invariant(tau, sc) ? rec.count_inv : rec.count_noninv)++;
      rec.count_cyl = static_cast<long>(simple_cylinders_containing(s, tau, L_sq).size());
      rec.beta_len = beta_len;
      double x = rec.L / beta_len;
      double lg = std::log2(x);
      rec.ratio_linear = x > 0 ? rec.count_all / x : 0;
      auto powlog = [&](int k) {
        if (lg <= 0) return 0.0;
        return rec.count_all / (x * std::pow(lg, k));
      };
      rec.ratio_log_dm3 = d >= 3 ? powlog(d - 3) : 0.0;
      rec.ratio_log_dm2 = d >= 2 ? powlog(d - 2) : 0.0;
      out[i] = rec;
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  };
  int nthreads = std::max(1, std::min<int>(threads, static_cast<int>(grid_L.size())));
  if (nthreads == 1) {
    for (size_t i = 0; i < grid_L.size(); ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < nthreads; ++w)
      pool.emplace_back([&, w] {
        for (size_t i = w; i < grid_L.size(); i += nthreads) work(i);
      });
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (!e.empty()) throw ExperimentError(e);
  return out;
}

SlopeFit run_cylinder_linear(const SlitSurface& s, const Involution& tau,
                             const std::vector<Rat>& grid_L) {
  if (grid_L.size() < 3) throw ExperimentError("insufficient data: need at least 3 grid points");
  size_t start = grid_L.size() / 2;
  if (grid_L.size() - start < 3) start = grid_L.size() - 3;
  std::vector<double> xs, ys;
  for (size_t i = start; i < grid_L.size(); ++i) {
    Rat L_sq = grid_L[i] * grid_L[i];
    long n = static_cast<long>(simple_cylinders_containing(s, tau, L_sq).size());
    if (n <= 0) throw ExperimentError("insufficient data: empty cylinder set at a grid point");
    xs.push_back(std::log2(rat_to_double(grid_L[i])));
    ys.push_back(std::log2(static_cast<double>(n)));
  }
  double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  SlopeFit fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  fit.points_used = static_cast<int>(xs.size());
  for (size_t i = 0; i < xs.size(); ++i)
    fit.max_residual = std::max(fit.max_residual,
                                std::abs(ys[i] - (fit.slope * xs[i] + fit.intercept)));
  return fit;
}

TriangleBoundReport run_triangle_bound(const SlitSurface& s, const Involution& tau, long dj_lo,
                                       long dj_hi) {
  TriangleBoundReport rep;
  rep.ell = size_of(s.slit_hol());
  for (long dj = dj_lo; dj <= dj_hi; ++dj) {
    long j = rep.ell + dj;
    auto tri = triangles_with_side(s, tau, j);
    TriangleBoundRow row;
    row.j = j;
    row.count = static_cast<long>(tri.size());
    row.constant = row.count / std::pow(2.0, static_cast<double>(dj));
    rep.rows.push_back(row);
    rep.max_constant = std::max(rep.max_constant, row.constant);
  }
  // Spearman rank correlation of constant against j
  size_t n = rep.rows.size();
  if (n >= 2) {
    std::vector<double> vals;
    for (auto& r : rep.rows) vals.push_back(r.constant);
    auto ranks = [&](const std::vector<double>& v) {
      std::vector<double> rk(v.size());
      std::vector<size_t> idx(v.size());
      for (size_t i = 0; i < v.size(); ++i) idx[i] = i;
      std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return v[a] < v[b]; });
      size_t i = 0;
      while (i < idx.size()) {
        size_t jj = i;
        while (jj + 1 < idx.size() && v[idx[jj + 1]] == v[idx[i]]) ++jj;
        double r = (i + jj) / 2.0 + 1.0;
        for (size_t t = i; t <= jj; ++t) rk[idx[t]] = r;
        i = jj + 1;
      }
      return rk;
    };
    std::vector<double> js;
    for (auto& r : rep.rows) js.push_back(static_cast<double>(r.j));
    auto r1 = ranks(js), r2 = ranks(vals);
    double m1 = 0, m2 = 0;
    for (size_t i = 0; i < n; ++i) {
      m1 += r1[i];
      m2 += r2[i];
    }
    m1 /= n;
    m2 /= n;
    double num = 0, d1 = 0, d2 = 0;
    for (size_t i = 0; i < n; ++i) {
      num += (r1[i] - m1) * (r2[i] - m2);
      d1 += (r1[i] - m1) * (r1[i] - m1);
      d2 += (r2[i] - m2) * (r2[i] - m2);
    }
    rep.spearman = (d1 > 0 && d2 > 0) ? num / std::sqrt(d1 * d2) : 0.0;
  }
  return rep;
}

BadTimesReport run_bad_times(const SlitSurface& s, const Involution& tau, const Rat& T,
                             const BadnessConfig& cfg) {
  (void)tau;
  Vec2 beta = s.slit_hol();
  if (sgn(beta.y) != 0 || sgn(beta.x) <= 0)
    throw ExperimentError("bad-times window needs a horizontal slit; normalize first");
  Rat L = beta.x;
  Rat A = area(s.s);
  if (T < 2 * L) throw ExperimentError("T too small: window below one availability quantum");
  BadTimesReport rep;
  rep.window_lo = T * L / (2 * A);
  rep.window_hi = T * L / A;
  // all candidates: |rho| <= T + A/L
  Rat len = T + A / L;
  EnumResult r = enumerate_sc(s, len * len, 1);
  std::vector<std::pair<Rat, Rat>> bad_ivals;
  for (const auto& sc : r.conns) {
    auto av = availability(s, sc);
    if (!av) continue;
    Rat lo = av->win_lo > rep.window_lo ? av->win_lo : rep.window_lo;
    Rat hi = av->win_hi < rep.window_hi ? av->win_hi : rep.window_hi;
    if (!(lo < hi)) continue;
    ++rep.available_count;
    rep.avails.push_back(*av);
    if (is_bad(*av, cfg, A, norm_sq(beta))) {
      ++rep.bad_count;
      bad_ivals.emplace_back(lo, hi);
    }
  }
  std::sort(bad_ivals.begin(), bad_ivals.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Rat measure(0);
  Rat cur_lo(0), cur_hi(0);
  bool open = false;
  for (const auto& [lo, hi] : bad_ivals) {
    if (!open) {
      cur_lo = lo;
      cur_hi = hi;
      open = true;
    } else if (lo <= cur_hi) {
      if (hi > cur_hi) cur_hi = hi;
    } else {
      measure += cur_hi - cur_lo;
      cur_lo = lo;
      cur_hi = hi;
    }
  }
  if (open) measure += cur_hi - cur_lo;
  rep.bad_measure = measure;
  rep.ratio = measure / (rep.window_hi - rep.window_lo);
  return rep;
}

DirectionTreeReport run_direction_tree(const Surface& s, const Involution& tau, int slit_edge,
                                       const Rat& L, int depth) {
  int d = stratum(s).dim_c;
  if (depth > d - 2) throw ExperimentError("direction tree depth exceeds dim_c - 2");
  Vec2 beta = edge_saddle(s, slit_edge).hol;
  Rat beta_sq = norm_sq(beta);
  std::vector<std::pair<Rat, Rat>> ranges(depth, {Rat(0), L * L});
  auto chains = successions(s, tau, slit_edge, ranges);
  DirectionTreeReport rep;
  rep.min_gap_per_level.assign(depth, Rat(-1));
  for (const auto& ch : chains) {
    for (size_t i = 0; i < ch.levels.size(); ++i) {
      const Vec2& g = ch.levels[i].boundary.hol;
      Rat cr = cross(g, beta);
      Rat gap = cr * cr / (norm_sq(g) * beta_sq);
      rep.records.push_back({static_cast<long>(i + 1), g, gap});
      Rat& mg = rep.min_gap_per_level[i];
      if (sgn(mg) < 0 || gap < mg) mg = gap;
    }
  }
  return rep;
}

std::string growth_to_csv(const std::vector<CountRecord>& records) {
  std::ostringstream out;
  out << "L,count_all,count_cyl,count_noninv,count_inv,beta_len,ratio_linear,ratio_log_dm3,"
         "ratio_log_dm2\n";
  for (const auto& r : records)
    out << fmt(r.L) << ',' << r.count_all << ',' << r.count_cyl << ',' << r.count_noninv << ','
        << r.count_inv << ',' << fmt(r.beta_len) << ',' << fmt(r.ratio_linear) << ','
        << fmt(r.ratio_log_dm3) << ',' << fmt(r.ratio_log_dm2) << '\n';
  return out.str();
}

std::string triangle_report_to_csv(const TriangleBoundReport& rep) {
  std::ostringstream out;
  out << "j,count,constant\n";
  for (const auto& r : rep.rows) out << r.j << ',' << r.count << ',' << fmt(r.constant) << '\n';
  out << "# ell=" << rep.ell << " max_constant=" << fmt(rep.max_constant)
      << " spearman=" << fmt(rep.spearman) << '\n';
  return out.str();
}

std::string directions_to_csv(const DirectionTreeReport& rep) {
  std::ostringstream out;
  out << "level,dir_x,dir_y,gap_sin_sq\n";
  for (const auto& r : rep.records)
    out << r.level << ',' << rat_to_string(r.dir.x) << ',' << rat_to_string(r.dir.y) << ','
        << rat_to_string(r.gap_sin_sq) << '\n';
  return out.str();
}

}  // namespace slitsurf
