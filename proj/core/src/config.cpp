#include "qsw/config.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qsw {

namespace {

using nlohmann::json;

WalkKind parse_walk_kind(const std::string& s) {
  if (s == "local") return WalkKind::Local;
  if (s == "global") return WalkKind::Global;
  if (s == "nm_global") return WalkKind::NonMoralisingGlobal;
  throw ConfigError("unknown walk kind `" + s + "` (expected local, global or nm_global)");
}

std::string walk_kind_name(WalkKind k) {
  switch (k) {
    case WalkKind::Local: return "local";
    case WalkKind::Global: return "global";
    case WalkKind::NonMoralisingGlobal: return "nm_global";
  }
  return "?";
}

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::filesystem::path& p) {
  if (p.empty() || p.is_absolute() || base.empty()) return p;
  return base / p;
}

}  // namespace

RunConfig RunConfig::from_json(const std::string& text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }

  RunConfig c;
  try {
    c.walk_kind = parse_walk_kind(j.at("walk").get<std::string>());
    c.graph_path = resolve(base_dir, j.at("graph").get<std::string>());
    c.omega = j.at("omega").get<double>();
    c.gamma = j.value("gamma", 1.0);
    c.workers = j.value("workers", std::size_t{1});

    const json& t = j.at("time");
    if (t.contains("t")) {
      c.time.is_series = false;
      c.time.t = t.at("t").get<double>();
    } else {
      c.time.is_series = true;
      c.time.t1 = t.at("t1").get<double>();
      c.time.tq = t.at("tq").get<double>();
      c.time.steps = t.at("steps").get<std::size_t>();
    }

    if (j.contains("initial_state")) {
      const json& init = j.at("initial_state");
      if (init.is_string() && init.get<std::string>() == "mixed") {
        c.initial_kind = InitialStateKind::Mixed;
      } else if (init.is_object() && init.contains("vertex")) {
        c.initial_kind = InitialStateKind::Vertex;
        c.initial_vertex = init.at("vertex").get<std::size_t>();
      } else if (init.is_object() && init.contains("file")) {
        c.initial_kind = InitialStateKind::File;
        c.initial_file = resolve(base_dir, init.at("file").get<std::string>());
      } else {
        throw ConfigError("initial_state must be \"mixed\", {\"vertex\": k} or {\"file\": path}");
      }
    }

    for (const json& s : j.value("sources", json::array())) {
      c.sources.push_back({s.at(0).get<std::size_t>(), s.at(1).get<double>()});
    }
    for (const json& s : j.value("sinks", json::array())) {
      c.sinks.push_back({s.at(0).get<std::size_t>(), s.at(1).get<double>()});
    }

    if (j.contains("outputs")) {
      c.out_populations = false;
      for (const json& o : j.at("outputs")) {
        const std::string name = o.get<std::string>();
        if (name == "populations") c.out_populations = true;
        else if (name == "rho") c.out_full_rho = true;
        else if (name == "coherence_norm") c.out_coherence_norm = true;
        else throw ConfigError("unknown output `" + name + "`");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field error: ") + e.what());
  }
  return c;
}

RunConfig RunConfig::from_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file `" + path.string() + "`");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json(buffer.str(), path.parent_path());
}

void RunConfig::validate() const {
  if (graph_path.empty()) throw ConfigError("no graph file given");
  if (!std::filesystem::exists(graph_path)) {
    throw ConfigError("graph file `" + graph_path.string() + "` does not exist");
  }
  if (!(omega >= 0.0 && omega <= 1.0)) throw ConfigError("omega must lie in [0, 1]");
  if (!(gamma > 0.0)) throw ConfigError("gamma must be positive");
  if (workers < 1) throw ConfigError("workers must be at least 1");
  if (time.is_series) {
    if (!(time.tq > time.t1)) throw ConfigError("series requires tq > t1");
    if (time.steps < 1) throw ConfigError("series requires steps >= 1");
  }
  if (walk_kind != WalkKind::Local && (!sources.empty() || !sinks.empty())) {
    throw ConfigError("sources/sinks are only supported for local walks");
  }
}

std::string RunConfig::describe() const {
  std::ostringstream out;
  out << "walk = " << walk_kind_name(walk_kind) << "\n";
  out << "graph = " << graph_path.string() << "\n";
  out << "omega = " << omega << "\n";
  out << "gamma = " << gamma << "\n";
  if (time.is_series) {
    out << "time = series t1 = " << time.t1 << " tq = " << time.tq << " steps = " << time.steps
        << "\n";
  } else {
    out << "time = single t = " << time.t << "\n";
  }
  switch (initial_kind) {
    case InitialStateKind::Mixed: out << "initial_state = mixed\n"; break;
    case InitialStateKind::Vertex:
      out << "initial_state = vertex " << initial_vertex << "\n";
      break;
    case InitialStateKind::File:
      out << "initial_state = file " << initial_file.string() << "\n";
      break;
  }
  for (const SourceArc& s : sources) {
    out << "source = " << s.target << " rate " << s.rate << "\n";
  }
  for (const SinkArc& s : sinks) out << "sink = " << s.origin << " rate " << s.rate << "\n";
  out << "workers = " << workers << "\n";
  return out.str();
}

}  // namespace qsw
