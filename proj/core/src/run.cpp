#include "qsw/run.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qsw/version.hpp"

namespace qsw {

namespace {

WeightedDigraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open graph file `" + path.string() + "`");
  try {
    return WeightedDigraph::load_matrix_market(in);
  } catch (const FileFormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw FileFormatError("invalid graph file `" + path.string() + "`: " + e.what());
  }
}

std::vector<double> load_probability_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open initial state file `" + path.string() + "`");
  std::vector<double> p;
  double x;
  while (in >> x) p.push_back(x);
  if (p.empty()) throw FileFormatError("initial state file `" + path.string() + "` is empty");
  return p;
}

WalkSystem make_walk(const RunConfig& config, const WeightedDigraph& g) {
  const double gamma = config.gamma;
  switch (config.walk_kind) {
    case WalkKind::Local: {
      const WeightedDigraph gu = symmetrize(g);
      SparseMatrix h = generator_matrix(gamma, gu);
      SparseMatrix m_l = local_lindblad(generator_matrix(gamma, g));
      const std::size_t total =
          g.vertex_count() + config.sources.size() + config.sinks.size();
      return WalkSystem::lqsw(config.omega, h.resized(total), m_l.resized(total),
                              config.sources, config.sinks, config.workers);
    }
    case WalkKind::Global: {
      const WeightedDigraph gu = symmetrize(g);
      return WalkSystem::gqsw(config.omega, generator_matrix(gamma, gu),
                              {global_lindblad(g)}, std::nullopt, std::nullopt, config.workers);
    }
    case WalkKind::NonMoralisingGlobal: {
      const WeightedDigraph gu = symmetrize(g);
      const VertexSubspaces vsets = nm_vsets(gu);
      return WalkSystem::gqsw(config.omega, nm_H(gamma, gu, vsets),
                              {nm_L(gamma, g, vsets)}, nm_H_rot(vsets), vsets, config.workers);
    }
  }
  throw ConfigError("unknown walk kind");
}

std::vector<double> make_initial(const RunConfig& config, std::size_t n_base) {
  switch (config.initial_kind) {
    case InitialStateKind::Mixed: {
      return std::vector<double>(n_base, 1.0 / static_cast<double>(n_base));
    }
    case InitialStateKind::Vertex: {
      if (config.initial_vertex >= n_base) {
        throw ConfigError("initial vertex out of range");
      }
      std::vector<double> p(n_base, 0.0);
      p[config.initial_vertex] = 1.0;
      return p;
    }
    case InitialStateKind::File:
      return load_probability_file(config.initial_file);
  }
  throw ConfigError("unknown initial state kind");
}

}  // namespace

ResultContainer run(const RunConfig& config) {
  config.validate();

  const WeightedDigraph g = load_graph(config.graph_path);
  WalkSystem walk = make_walk(config, g);
  walk.initial_state(make_initial(config, g.vertex_count()));

  const std::size_t n_measured = walk.measured_vertex_count();
  ResultContainer out;

  std::vector<double> times;
  std::vector<StateVector> states;
  double t_final;
  if (config.time.is_series) {
    SeriesResult sr = walk.series(config.time.t1, config.time.tq, config.time.steps);
    times = std::move(sr.times);
    states = std::move(sr.states);
    t_final = config.time.tq;
  } else {
    walk.step(config.time.t);
    times = {config.time.t};
    t_final = config.time.t;
  }
  const std::size_t n_times = times.size();

  out.arrays.emplace("times", ArrayBlock{{n_times}, times});

  if (config.out_populations) {
    ArrayBlock pops{{n_times, n_measured}, {}};
    pops.data.reserve(n_times * n_measured);
    if (config.time.is_series) {
      for (const StateVector& s : states) {
        for (double p : walk.populations_of(s)) pops.data.push_back(p);
      }
    } else {
      for (double p : walk.gather_populations()) pops.data.push_back(p);
    }
    out.arrays.emplace("populations", std::move(pops));
  }

  if (config.out_coherence_norm) {
    ArrayBlock coh{{n_times}, {}};
    coh.data.reserve(n_times);
    if (config.time.is_series) {
      for (const StateVector& s : states) {
        DensityMatrix rho;
        rho.dim = walk.dimension();
        rho.entries = unvec_density(s.gather(), rho.dim);
        coh.data.push_back(rho.max_coherence());
      }
    } else {
      coh.data.push_back(walk.gather_result().max_coherence());
    }
    out.arrays.emplace("coherence_norm", std::move(coh));
  }

  if (config.out_full_rho) {
    const DensityMatrix rho = walk.gather_result();
    ArrayBlock re{{rho.dim, rho.dim}, {}};
    ArrayBlock im{{rho.dim, rho.dim}, {}};
    re.data.reserve(rho.entries.size());
    im.data.reserve(rho.entries.size());
    for (const Complex& v : rho.entries) {
      re.data.push_back(v.real());
      im.data.push_back(v.imag());
    }
    out.arrays.emplace("rho_re", std::move(re));
    out.arrays.emplace("rho_im", std::move(im));
  }

  // Parameter diagnostics for the final-time exponential.
  const StepParameters sp =
      select_parameters(walk.liouvillian().one_norms(), t_final, build_theta_table());

  std::ostringstream meta;
  meta << "qsw_version = " << kVersionString << "\n";
  const auto now = std::chrono::system_clock::now();
  meta << "timestamp_unix = "
       << std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count()
       << "\n";
  meta << config.describe();
  meta << "liouvillian_dim = " << walk.liouvillian().dim() << "\n";
  meta << "liouvillian_one_norm = " << walk.liouvillian().one_norms()[0] << "\n";
  meta << "taylor_m_star = " << sp.m_star << "\n";
  meta << "taylor_s = " << sp.s << "\n";
  out.metadata = meta.str();
  return out;
}

}  // namespace qsw
