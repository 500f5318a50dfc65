#include "regionsched/trace.hpp"

#include <json.hpp>

namespace rsched {

namespace {

using nlohmann::ordered_json;

ordered_json owner_json(const Owner& owner) {
  if (!owner) return "M";
  return *owner;
}

Owner owner_from_json(const ordered_json& node) {
  if (node.is_string()) {
    if (node.get<std::string>() != "M") {
      throw MalformedJsonError("owner must be an int or \"M\"");
    }
    return std::nullopt;
  }
  return node.get<int>();
}

Rat rat_from_json(const ordered_json& node) {
  if (node.is_string()) return parse_rational(node.get<std::string>());
  if (node.is_number_integer()) return Rat(node.get<long long>());
  throw MalformedJsonError("expected rational string");
}

ordered_json rat_map_json(const std::map<int, TimePoint>& map) {
  ordered_json out = ordered_json::object();
  for (const auto& [job, value] : map) out[std::to_string(job)] = to_string(value);
  return out;
}

std::map<int, TimePoint> rat_map_from_json(const ordered_json& node) {
  std::map<int, TimePoint> out;
  for (auto it = node.begin(); it != node.end(); ++it) {
    out[std::stoi(it.key())] = rat_from_json(it.value());
  }
  return out;
}

}  // namespace

std::string to_string(TraceEvent::Kind kind) {
  switch (kind) {
    case TraceEvent::Kind::Release: return "release";
    case TraceEvent::Kind::Admit: return "admit";
    case TraceEvent::Kind::Commit: return "commit";
    case TraceEvent::Kind::Complete: return "complete";
  }
  return "release";
}

std::string trace_to_json(const Trace& trace) {
  ordered_json doc;
  doc["params"] = {
      {"model", to_string(trace.params.model)},
      {"alpha", to_string(trace.params.alpha)},
      {"beta", to_string(trace.params.beta)},
      {"delta", to_string(trace.params.delta)},
      {"epsilon", to_string(trace.epsilon)},
  };

  ordered_json events = ordered_json::array();
  for (const auto& event : trace.events) {
    ordered_json node;
    node["type"] = to_string(event.kind);
    node["t"] = to_string(event.t);
    node["job"] = event.job;
    if (event.kind == TraceEvent::Kind::Admit) {
      node["parent"] = owner_json(event.parent);
      node["region_to"] = to_string(event.region_to.value());
    }
    if (event.kind == TraceEvent::Kind::Complete) node["on_time"] = event.on_time;
    events.push_back(std::move(node));
  }
  doc["events"] = std::move(events);

  ordered_json execution = ordered_json::array();
  for (const auto& seg : trace.execution) {
    execution.push_back({{"job", seg.job},
                         {"start", to_string(seg.start)},
                         {"end", to_string(seg.end)}});
  }
  doc["execution"] = std::move(execution);

  ordered_json segments = ordered_json::array();
  for (const auto& seg : trace.final_segments) {
    segments.push_back({{"start", to_string(seg.start)},
                        {"end", to_string(seg.end)},
                        {"owner", seg.owner}});
  }
  doc["segments"] = std::move(segments);

  ordered_json tree = ordered_json::object();
  for (const auto& [job, node] : trace.tree.nodes) {
    tree[std::to_string(job)] = {{"parent", owner_json(node.parent)},
                                 {"tau", node.descendants},
                                 {"depth", node.depth}};
  }
  doc["tree"] = std::move(tree);

  doc["admitted_at"] = rat_map_json(trace.admitted_at);
  doc["completion"] = rat_map_json(trace.completion);
  doc["commitment"] = rat_map_json(trace.commitment);

  doc["summary"] = {
      {"released", trace.summary.released},
      {"admitted", trace.summary.admitted},
      {"completed_on_time", trace.summary.completed_on_time},
      {"completed_late", trace.summary.completed_late},
      {"commitments_broken", trace.summary.commitments_broken},
  };
  return doc.dump();
}

Trace trace_from_json(std::string_view json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedJsonError(std::string("trace is not valid JSON: ") + e.what());
  }

  Trace trace;
  const auto& params = doc.at("params");
  auto model = commit_model_from_string(params.at("model").get<std::string>());
  if (!model) throw MalformedJsonError("unknown commitment model in trace");
  trace.params.model = *model;
  trace.params.alpha = rat_from_json(params.at("alpha"));
  trace.params.beta = rat_from_json(params.at("beta"));
  trace.params.delta = rat_from_json(params.at("delta"));
  trace.epsilon = rat_from_json(params.at("epsilon"));

  for (const auto& node : doc.at("events")) {
    TraceEvent event;
    std::string type = node.at("type").get<std::string>();
    if (type == "release") event.kind = TraceEvent::Kind::Release;
    else if (type == "admit") event.kind = TraceEvent::Kind::Admit;
    else if (type == "commit") event.kind = TraceEvent::Kind::Commit;
    else if (type == "complete") event.kind = TraceEvent::Kind::Complete;
    else throw MalformedJsonError("unknown trace event type: " + type);
    event.t = rat_from_json(node.at("t"));
    event.job = node.at("job").get<int>();
    if (event.kind == TraceEvent::Kind::Admit) {
      event.parent = owner_from_json(node.at("parent"));
      event.region_to = rat_from_json(node.at("region_to"));
    }
    if (event.kind == TraceEvent::Kind::Complete) {
      event.on_time = node.at("on_time").get<bool>();
    }
    trace.events.push_back(std::move(event));
  }

  for (const auto& node : doc.at("execution")) {
    trace.execution.push_back({node.at("job").get<int>(),
                               rat_from_json(node.at("start")),
                               rat_from_json(node.at("end"))});
  }
  for (const auto& node : doc.at("segments")) {
    trace.final_segments.push_back({rat_from_json(node.at("start")),
                                    rat_from_json(node.at("end")),
                                    node.at("owner").get<int>()});
  }
  const auto& tree = doc.at("tree");
  for (auto it = tree.begin(); it != tree.end(); ++it) {
    InterruptionNode node;
    node.id = std::stoi(it.key());
    node.parent = owner_from_json(it.value().at("parent"));
    node.descendants = it.value().at("tau").get<int>();
    node.depth = it.value().at("depth").get<int>();
    trace.tree.nodes.emplace(node.id, std::move(node));
  }
  // children / machine_children rebuilt from parents in admission order.
  std::vector<std::pair<TimePoint, int>> order;
  trace.admitted_at = rat_map_from_json(doc.at("admitted_at"));
  for (const auto& [job, at] : trace.admitted_at) order.emplace_back(at, job);
  std::sort(order.begin(), order.end());
  for (const auto& [at, job] : order) {
    auto& node = trace.tree.nodes.at(job);
    if (node.parent) trace.tree.nodes.at(*node.parent).children.push_back(job);
    else trace.tree.machine_children.push_back(job);
  }

  trace.completion = rat_map_from_json(doc.at("completion"));
  trace.commitment = rat_map_from_json(doc.at("commitment"));

  const auto& summary = doc.at("summary");
  trace.summary.released = summary.at("released").get<int>();
  trace.summary.admitted = summary.at("admitted").get<int>();
  trace.summary.completed_on_time = summary.at("completed_on_time").get<int>();
  trace.summary.completed_late = summary.at("completed_late").get<int>();
  trace.summary.commitments_broken = summary.at("commitments_broken").get<int>();
  return trace;
}

}  // namespace rsched
