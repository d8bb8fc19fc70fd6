#pragma once

// Experiment runner: validates a configuration, delegates to one compute
// operation and packages the result as stamped tables and plots.

#include <cmath>
#include <filesystem>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "magnon/classical.hpp"
#include "magnon/error.hpp"
#include "magnon/harper.hpp"
#include "magnon/kicked.hpp"
#include "magnon/lab/config.hpp"
#include "magnon/lab/svg.hpp"
#include "magnon/lab/table.hpp"
#include "magnon/rmt.hpp"

namespace magnon::lab {

/// A numerical failure tagged with the experiment that hit it.
class ExperimentFailure : public Error {
public:
  using Error::Error;
};

struct TableArtifact {
  std::string name; // file stem
  ResultTable table;
};

struct PlotArtifact {
  std::string name;
  PlotSpec plot;
};

struct RunOutput {
  std::vector<TableArtifact> tables;
  std::vector<PlotArtifact> plots;
};

struct RunOptions {
  unsigned threads = 1;
};

namespace detail {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
inline constexpr double kGoeMean = 4.0 / std::numbers::pi;
inline constexpr double kGueMean = std::numbers::pi / 2.0;

inline std::size_t require_n(const ExperimentConfig& c, const std::string& key, std::size_t min) {
  for (auto n : c.sizes(key))
    if (n < min) throw ConfigError(key, "must be >= " + std::to_string(min));
  return c.sizes(key).front();
}

inline void require_beta(const ExperimentConfig& c) {
  for (double b : c.reals("beta"))
    if (b < 0.0 || b > 0.5) throw ConfigError("beta", "must lie in [0, 0.5]");
}

inline void require_positive(const ExperimentConfig& c, const std::string& key) {
  for (double v : c.reals(key))
    if (!(v > 0.0)) throw ConfigError(key, "must be > 0");
}

inline void require_nonnegative(const ExperimentConfig& c, const std::string& key) {
  for (double v : c.reals(key))
    if (v < 0.0) throw ConfigError(key, "must be >= 0");
}

inline void require_single(const ExperimentConfig& c, const std::string& key) {
  if (c.reals(key).size() != 1) throw ConfigError(key, "expects a single value");
}

/// sigma is either a number or the literal Ngamma (sigma = N * gamma).
inline double resolve_sigma(const ExperimentConfig& c, std::size_t n) {
  if (c.raw("sigma") == "Ngamma") return static_cast<double>(n) * c.real("gamma");
  const double s = c.real("sigma");
  if (!(s > 0.0)) throw ConfigError("sigma", "must be > 0 or Ngamma");
  return s;
}

inline Series line(std::string name, std::vector<double> x, std::vector<double> y, SeriesStyle style = SeriesStyle::Line) {
  return {std::move(name), std::move(x), std::move(y), style};
}

inline std::string fmt(double v) { return svg_detail::label(v); }

} // namespace detail

/// Checks every key the experiment reads, before any computation.
inline void validate(const ExperimentConfig& c) {
  using namespace detail;
  c.seed();
  switch (c.experiment()) {
  case Experiment::HarperSweep:
  case Experiment::HarperEnergy:
    require_n(c, "N", 2);
    if (c.sizes("N").size() != 1) throw ConfigError("N", "expects a single value");
    require_nonnegative(c, "g");
    if (c.experiment() == Experiment::HarperEnergy) require_single(c, "g");
    require_positive(c, "gamma");
    require_single(c, "beta");
    require_beta(c);
    resolve_sigma(c, c.sizes("N").front());
    break;
  case Experiment::HarperScaling:
    require_n(c, "N", 2);
    if (c.sizes("N").size() < 3) throw ConfigError("N", "scaling needs at least three chain lengths");
    require_nonnegative(c, "g");
    require_positive(c, "gamma");
    require_single(c, "beta");
    require_beta(c);
    break;
  case Experiment::KickedTau:
  case Experiment::KickedTime:
  case Experiment::KickedNeighbor:
  case Experiment::KickedDistribution: {
    const std::size_t n = require_n(c, "N", 2);
    if (c.sizes("N").size() != 1) throw ConfigError("N", "expects a single value");
    require_single(c, "g");
    require_beta(c);
    require_positive(c, "tau");
    if (c.experiment() == Experiment::KickedTime || c.experiment() == Experiment::KickedNeighbor) require_single(c, "beta");
    if (c.experiment() == Experiment::KickedDistribution) {
      require_single(c, "tau");
      if (c.unsigned_int("bins") < 1) throw ConfigError("bins", "must be >= 1");
      if (!(c.real("c_max") > 0.0)) throw ConfigError("c_max", "must be > 0");
    }
    if (c.experiment() == Experiment::KickedTime) {
      const auto site = c.unsigned_int("site");
      if (site < 1 || site > n) throw ConfigError("site", "must lie in 1..N");
      c.unsigned_int("n_kicks");
    }
    if (c.experiment() == Experiment::KickedNeighbor)
      for (auto r : c.sizes("r"))
        if (r < 1 || r > n - 1) throw ConfigError("r", "must lie in 1..N-1");
    break;
  }
  case Experiment::ClassicalPortrait:
    require_nonnegative(c, "tau");
    require_single(c, "g");
    if (c.unsigned_int("n_iter") < 1) throw ConfigError("n_iter", "must be >= 1");
    if (c.unsigned_int("line_seeds") + c.unsigned_int("seeds") < 1) throw ConfigError("seeds", "need at least one orbit");
    break;
  case Experiment::RmtTable:
    require_n(c, "N", 3);
    if (c.sizes("N").size() != 1) throw ConfigError("N", "expects a single value");
    if (c.unsigned_int("sample_size") < 1) throw ConfigError("sample_size", "must be >= 1");
    break;
  }
}

namespace detail {

inline RunOutput harper_sweep(const ExperimentConfig& c, unsigned threads) {
  const std::size_t n = c.sizes("N").front();
  const harper::HamiltonianSpec base{n, 0.0, resolve_sigma(c, n), c.real("beta")};
  const auto points = harper::sweep_g(base, c.reals("g"), threads);

  ResultTable t({"g", "sigma", "beta", "N", "avg_C", "N_times_avg_C"});
  std::vector<double> xs, ys;
  for (const auto& p : points) {
    t.add_row({p.g, base.sigma, base.beta, static_cast<double>(n), p.spectral_average, p.spectral_average * static_cast<double>(n)});
    xs.push_back(p.g);
    ys.push_back(p.spectral_average * static_cast<double>(n));
  }
  PlotSpec plot{"Harper chain: spectral averaged concurrence", "g", "N <C>", false, {line("N = " + std::to_string(n), xs, ys)}};
  return {{{"harper-sweep", std::move(t)}}, {{"harper-sweep", std::move(plot)}}};
}

inline RunOutput harper_scaling(const ExperimentConfig& c, unsigned threads) {
  const auto ns = c.sizes("N");
  ResultTable points({"g", "N", "sigma", "avg_C", "N_times_avg_C"});
  ResultTable fits({"g", "exponent", "intercept"});
  PlotSpec plot{"Harper chain: scaling with N (sigma = N gamma)", "N", "<C>", true, {}};
  for (double g : c.reals("g")) {
    const auto fit = harper::scaling_fit(g, ns, c.real("gamma"), c.real("beta"), threads);
    std::vector<double> xs, ys;
    for (const auto& p : fit.points) {
      const double nd = static_cast<double>(p.n_sites);
      points.add_row({g, nd, nd * c.real("gamma"), p.spectral_average, p.spectral_average * nd});
      xs.push_back(nd);
      ys.push_back(p.spectral_average);
    }
    fits.add_row({g, fit.exponent, fit.intercept});
    plot.series.push_back(line("g = " + fmt(g) + ", slope " + fmt(-fit.exponent), xs, ys));
  }
  return {{{"harper-scaling", std::move(points)}, {"harper-scaling_fit", std::move(fits)}},
          {{"harper-scaling", std::move(plot)}}};
}

inline RunOutput harper_energy(const ExperimentConfig& c, unsigned) {
  const std::size_t n = c.sizes("N").front();
  const harper::HamiltonianSpec spec{n, c.real("g"), resolve_sigma(c, n), c.real("beta")};
  const auto points = harper::concurrence_vs_energy(spec);
  ResultTable t({"scaled_energy", "avg_C", "N_times_avg_C"});
  std::vector<double> xs, ys;
  for (const auto& p : points) {
    t.add_row({p.scaled_energy, p.average, p.average * static_cast<double>(n)});
    xs.push_back(p.scaled_energy);
    ys.push_back(p.average * static_cast<double>(n));
  }
  PlotSpec plot{"Harper chain: concurrence against energy", "E / (1 + g)", "N <C>", false,
                {line("g = " + fmt(spec.g), xs, ys, SeriesStyle::Scatter)}};
  return {{{"harper-energy", std::move(t)}}, {{"harper-energy", std::move(plot)}}};
}

inline RunOutput kicked_tau(const ExperimentConfig& c, unsigned threads) {
  const std::size_t n = c.sizes("N").front();
  const double nd = static_cast<double>(n);
  const auto taus = c.reals("tau");
  ResultTable t({"series", "tau", "beta", "avg_C", "N_times_avg_C"});
  PlotSpec plot{"Kicked Harper: spectral averaged concurrence", "tau", "N <C>", false, {}};
  for (double beta : c.reals("beta")) {
    const kicked::FloquetSpec spec{n, c.real("g"), taus.front(), beta};
    const auto points = kicked::sweep_tau(spec, taus, threads);
    std::vector<double> xs, ys;
    for (const auto& p : points) {
      t.add_row({std::string("beta=") + fmt(beta), p.tau, beta, p.spectral_average, p.scaled_average});
      xs.push_back(p.tau);
      ys.push_back(p.scaled_average);
    }
    plot.series.push_back(line("beta = " + fmt(beta), xs, ys));
  }
  const double lo = *std::min_element(taus.begin(), taus.end());
  const double hi = *std::max_element(taus.begin(), taus.end());
  for (const auto& [name, value] : {std::pair<std::string, double>{"RMT_GOE", kGoeMean}, {"RMT_GUE", kGueMean}}) {
    t.add_row({name, lo, kNaN, value / nd, value});
    t.add_row({name, hi, kNaN, value / nd, value});
    plot.series.push_back(line(name, {lo, hi}, {value, value}));
  }
  return {{{"kicked-tau", std::move(t)}}, {{"kicked-tau", std::move(plot)}}};
}

inline RunOutput kicked_time(const ExperimentConfig& c, unsigned) {
  const std::size_t n = c.sizes("N").front();
  const double nd = static_cast<double>(n);
  const auto site = static_cast<std::size_t>(c.unsigned_int("site"));
  const auto kicks = static_cast<std::size_t>(c.unsigned_int("n_kicks"));
  const auto initial = OneParticleState::localized(n, Site{site});
  ResultTable t({"tau", "beta", "t", "avg_C", "N_times_avg_C"});
  PlotSpec plot{"Kicked Harper: concurrence of |l=" + std::to_string(site) + "> in time", "kicks", "N <C>", false, {}};
  for (double tau : c.reals("tau")) {
    const kicked::FloquetSpec spec{n, c.real("g"), tau, c.real("beta")};
    const auto trace = kicked::evolve(spec, initial, kicks);
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
      const double tt = static_cast<double>(trace.times[i]);
      t.add_row({tau, spec.beta, tt, trace.averages[i], trace.averages[i] * nd});
      xs.push_back(tt);
      ys.push_back(trace.averages[i] * nd);
    }
    plot.series.push_back(line("tau = " + fmt(tau), xs, ys));
  }
  plot.series.push_back(line("pi/2", {0.0, static_cast<double>(kicks)}, {kGueMean, kGueMean}));
  return {{{"kicked-time", std::move(t)}}, {{"kicked-time", std::move(plot)}}};
}

inline RunOutput kicked_neighbor(const ExperimentConfig& c, unsigned threads) {
  const std::size_t n = c.sizes("N").front();
  const double nd = static_cast<double>(n);
  const auto rs = c.sizes("r");
  const auto taus = c.reals("tau");
  const kicked::FloquetSpec spec{n, c.real("g"), taus.front(), c.real("beta")};
  const RMatrix profile = kicked::neighbor_profile_sweep(spec, rs, taus, threads);
  ResultTable t({"tau", "r", "C_r", "N_times_C_r"});
  for (std::size_t ti = 0; ti < taus.size(); ++ti)
    for (std::size_t ri = 0; ri < rs.size(); ++ri)
      t.add_row({taus[ti], static_cast<double>(rs[ri]), profile(ri, ti), profile(ri, ti) * nd});
  PlotSpec plot{"Kicked Harper: r-th neighbour concurrence", "tau", "N C_r", false, {}};
  for (std::size_t ri = 0; ri < rs.size(); ++ri) {
    std::vector<double> ys;
    for (std::size_t ti = 0; ti < taus.size(); ++ti) ys.push_back(profile(ri, ti) * nd);
    plot.series.push_back(line("r = " + std::to_string(rs[ri]), taus, ys));
  }
  return {{{"kicked-neighbor", std::move(t)}}, {{"kicked-neighbor", std::move(plot)}}};
}

inline RunOutput kicked_distribution(const ExperimentConfig& c, unsigned) {
  const std::size_t n = c.sizes("N").front();
  const auto bins = static_cast<std::size_t>(c.unsigned_int("bins"));
  const double c_max = c.real("c_max");
  const double width = c_max / static_cast<double>(bins);
  ResultTable summary({"beta", "law", "ks", "mean_scaled", "predicted_mean", "fraction_above_2", "pooled_count"});
  ResultTable hist({"beta", "c_lo", "c_hi", "c_mid", "density", "pdf_GOE", "pdf_GUE"});
  RunOutput out;
  for (double beta : c.reals("beta")) {
    const kicked::FloquetSpec spec{n, c.real("g"), c.real("tau"), beta};
    const auto sc = kicked::floquet_concurrence(spec, PairDetail::Skip);
    std::vector<OneParticleState> states;
    states.reserve(sc.n_sites());
    for (std::size_t k = 0; k < sc.n_sites(); ++k) states.push_back(sc.state(k));
    for (auto kind : {rmt::EnsembleKind::GOE, rmt::EnsembleKind::GUE}) {
      const auto cmp = rmt::compare_ensemble(states, kind);
      summary.add_row({beta, std::string(rmt::to_string(kind)), cmp.ks, cmp.mean_scaled, cmp.predicted_mean,
                       cmp.fraction_above_2, static_cast<double>(cmp.pooled_count)});
    }
    const auto pooled = rmt::pooled_scaled_concurrence(states);
    const auto density = rmt::density_histogram(pooled, bins, c_max);
    std::vector<double> mids, goe, gue;
    for (std::size_t b = 0; b < bins; ++b) {
      const double lo = width * static_cast<double>(b);
      const double mid = lo + 0.5 * width;
      const double pg = rmt::concurrence_pdf(rmt::EnsembleKind::GOE, mid);
      const double pu = rmt::concurrence_pdf(rmt::EnsembleKind::GUE, mid);
      hist.add_row({beta, lo, lo + width, mid, density[b], pg, pu});
      mids.push_back(mid);
      goe.push_back(pg);
      gue.push_back(pu);
    }
    std::vector<double> edges, heights;
    for (std::size_t b = 0; b < bins; ++b) {
      edges.push_back(width * static_cast<double>(b));
      heights.push_back(density[b]);
    }
    edges.push_back(c_max);
    heights.push_back(density.back());
    PlotSpec plot{"Kicked Harper eigenstates, beta = " + fmt(beta), "c = N C", "density", false,
                  {line("eigenstates", edges, heights, SeriesStyle::Step), line("GOE", mids, goe), line("GUE", mids, gue)}};
    out.plots.push_back({"kicked-distribution_beta" + fmt(beta), std::move(plot)});
  }
  out.tables.push_back({"kicked-distribution", std::move(hist)});
  out.tables.push_back({"kicked-distribution_summary", std::move(summary)});
  return out;
}

inline RunOutput classical_portrait(const ExperimentConfig& c, unsigned) {
  const auto seeds = classical::default_seeds(c.seed(), static_cast<std::size_t>(c.unsigned_int("line_seeds")),
                                              static_cast<std::size_t>(c.unsigned_int("seeds")));
  const auto n_iter = static_cast<std::size_t>(c.unsigned_int("n_iter"));
  const double g = c.real("g");
  ResultTable t({"tau", "orbit", "iter", "q", "p"});
  RunOutput out;
  for (double tau : c.reals("tau")) {
    const auto orbits = classical::portrait(tau, g, seeds, n_iter);
    PlotSpec plot{"Classical map, tau = " + fmt(tau) + ", g = " + fmt(g), "q", "p", false, {}};
    for (std::size_t o = 0; o < orbits.size(); ++o) {
      Series s{"", {}, {}, SeriesStyle::Scatter};
      for (std::size_t i = 0; i < orbits[o].size(); ++i) {
        const auto& pt = orbits[o][i];
        t.add_row({tau, static_cast<double>(o), static_cast<double>(i), pt.q, pt.p});
        s.x.push_back(pt.q);
        s.y.push_back(pt.p);
      }
      plot.series.push_back(std::move(s));
    }
    out.plots.push_back({"classical-portrait_tau" + fmt(tau), std::move(plot)});
  }
  out.tables.push_back({"classical-portrait", std::move(t)});
  return out;
}

inline RunOutput rmt_table(const ExperimentConfig& c, unsigned threads) {
  const std::size_t n = c.sizes("N").front();
  const double nd = static_cast<double>(n);
  const auto count = static_cast<std::size_t>(c.unsigned_int("sample_size"));
  ResultTable t({"kind", "predicted_mean", "quadrature_mean", "fraction_above_2", "finite_N_mean", "sampled_mean", "N",
                 "sample_size"});
  std::uint64_t stream = 0;
  for (auto kind : {rmt::EnsembleKind::GOE, rmt::EnsembleKind::GUE}) {
    const auto states = rmt::sample_states(kind, n, count, numerics::split_seed(c.seed(), stream++), threads);
    double sum = 0.0;
    for (const auto& s : states) sum += average_concurrence(s);
    t.add_row({std::string(rmt::to_string(kind)), rmt::predicted_mean(kind), rmt::mean_by_quadrature(kind),
               rmt::fraction_above(kind, 2.0), nd * rmt::sphere_average_concurrence(kind, n),
               nd * sum / static_cast<double>(count), nd, static_cast<double>(count)});
  }
  return {{{"rmt-table", std::move(t)}}, {}};
}

} // namespace detail

/// Validates the configuration and runs the experiment. Tables are stamped
/// with the configuration; plots are returned unrendered.
inline RunOutput run(const ExperimentConfig& config, const RunOptions& options = {}) {
  validate(config);
  RunOutput out;
  try {
    switch (config.experiment()) {
    case Experiment::HarperSweep: out = detail::harper_sweep(config, options.threads); break;
    case Experiment::HarperScaling: out = detail::harper_scaling(config, options.threads); break;
    case Experiment::HarperEnergy: out = detail::harper_energy(config, options.threads); break;
    case Experiment::KickedTau: out = detail::kicked_tau(config, options.threads); break;
    case Experiment::KickedTime: out = detail::kicked_time(config, options.threads); break;
    case Experiment::KickedNeighbor: out = detail::kicked_neighbor(config, options.threads); break;
    case Experiment::KickedDistribution: out = detail::kicked_distribution(config, options.threads); break;
    case Experiment::ClassicalPortrait: out = detail::classical_portrait(config, options.threads); break;
    case Experiment::RmtTable: out = detail::rmt_table(config, options.threads); break;
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ExperimentFailure(std::string(to_string(config.experiment())) + ": " + e.what());
  }
  for (auto& a : out.tables) stamp(a.table, config);
  return out;
}

/// Writes <name>.csv for every table and, with svg, <name>.svg for every
/// plot. Returns the written paths in order.
inline std::vector<std::filesystem::path> write_outputs(const RunOutput& out, const std::filesystem::path& dir, bool svg) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  for (const auto& a : out.tables) {
    written.push_back(dir / (a.name + ".csv"));
    emit_csv(a.table, written.back());
  }
  if (svg) {
    for (const auto& p : out.plots) {
      written.push_back(dir / (p.name + ".svg"));
      emit_svg(p.plot, written.back());
    }
  }
  return written;
}

} // namespace magnon::lab
