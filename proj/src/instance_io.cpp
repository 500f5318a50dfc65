#include "regionsched/instance_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace rsched {

namespace {

using nlohmann::ordered_json;

Rat rational_field(const ordered_json& node, const char* key, const char* where) {
  if (!node.contains(key)) {
    throw MalformedJsonError(std::string(where) + ": missing field '" + key + "'");
  }
  const auto& value = node.at(key);
  if (value.is_string()) {
    auto parsed = try_parse_rational(value.get<std::string>());
    if (!parsed) {
      throw BadRationalError(std::string(where) + ": field '" + key +
                             "' is not a rational: " + value.dump());
    }
    return *parsed;
  }
  if (value.is_number_integer()) {
    return Rat(value.get<long long>());
  }
  throw MalformedJsonError(std::string(where) + ": field '" + key +
                           "' must be a rational string or integer");
}

}  // namespace

Instance parse_instance(std::string_view json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedJsonError(std::string("instance is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw MalformedJsonError("instance must be a JSON object");
  if (!doc.contains("jobs") || !doc.at("jobs").is_array()) {
    throw MalformedJsonError("instance needs a 'jobs' array");
  }

  Rat epsilon = rational_field(doc, "epsilon", "instance");
  std::vector<Job> jobs;
  jobs.reserve(doc.at("jobs").size());
  for (const auto& node : doc.at("jobs")) {
    if (!node.is_object()) throw MalformedJsonError("job entries must be objects");
    if (!node.contains("id") || !node.at("id").is_number_integer()) {
      throw MalformedJsonError("job needs an integer 'id'");
    }
    Job job;
    job.id = node.at("id").get<int>();
    std::string where = "job " + std::to_string(job.id);
    job.release = rational_field(node, "r", where.c_str());
    job.processing = rational_field(node, "p", where.c_str());
    job.deadline = rational_field(node, "d", where.c_str());
    if (node.contains("w")) job.weight = rational_field(node, "w", where.c_str());
    jobs.push_back(std::move(job));
  }
  return make_instance(std::move(jobs), std::move(epsilon));
}

Instance parse_instance_stream(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open instance file: " + path);
  return parse_instance_stream(in);
}

std::string serialize_instance(const Instance& instance) {
  ordered_json doc;
  doc["epsilon"] = to_string(instance.epsilon);
  doc["jobs"] = ordered_json::array();
  for (const auto& job : instance.jobs) {
    ordered_json node;
    node["id"] = job.id;
    node["r"] = to_string(job.release);
    node["p"] = to_string(job.processing);
    node["d"] = to_string(job.deadline);
    if (job.weight != 1) node["w"] = to_string(job.weight);
    doc["jobs"].push_back(std::move(node));
  }
  return doc.dump();
}

}  // namespace rsched
