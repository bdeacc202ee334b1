#include "pbx/document.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pbx/error.hpp"

namespace pbx {

using Json = nlohmann::ordered_json;

namespace {

std::string scalar_text(const Json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number_float()) {
    throw Error(ErrorCode::ParseError, where + ": floating-point JSON number " + v.dump() +
                                           " is not exact; write it as a string such as \"" + v.dump() + "\"");
  }
  throw Error(ErrorCode::ParseError, where + ": expected a string or integer, got " + std::string(v.type_name()));
}

std::vector<std::string> string_array(const Json& doc, const char* key, bool required) {
  std::vector<std::string> out;
  if (!doc.contains(key)) {
    if (required) throw Error(ErrorCode::ParseError, std::string("missing \"") + key + "\"");
    return out;
  }
  const Json& arr = doc.at(key);
  if (!arr.is_array()) throw Error(ErrorCode::ParseError, std::string("\"") + key + "\" must be an array");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(scalar_text(arr[i], std::string(key) + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::optional<std::string> optional_string(const Json& doc, const char* key) {
  if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
  if (!doc.at(key).is_string()) throw Error(ErrorCode::ParseError, std::string("\"") + key + "\" must be a string");
  return doc.at(key).get<std::string>();
}

Json strings(const RationalVector& values) {
  Json arr = Json::array();
  for (const auto& v : values) arr.push_back(v.str());
  return arr;
}

std::string cdf_text(const StepCDF& f) { return "(" + join(f.values()) + ")"; }

std::string escape_dot(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

PBoxCheck PBoxDocument::check() const {
  const RationalVector low = parse_rationals(lower);
  const RationalVector up = parse_rationals(upper);
  const Domain dom = domain.empty() ? Domain::integers(std::max(lower.size(), upper.size())) : Domain(domain);
  return pbox_validate(low, up, dom);
}

PBox PBoxDocument::pbox() const {
  PBoxCheck c = check();
  if (!c.ok()) throw Error(ErrorCode::InvariantViolation, c.describe());
  return std::move(*c.pbox);
}

PBoxDocument parse_document(std::string_view json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text.begin(), json_text.end());
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "document must be a JSON object");
  PBoxDocument d;
  d.domain = string_array(doc, "domain", false);
  d.lower = string_array(doc, "lower", true);
  d.upper = string_array(doc, "upper", true);
  d.name = optional_string(doc, "name");
  d.description = optional_string(doc, "description");
  if (d.lower.empty()) throw Error(ErrorCode::ParseError, "\"lower\" must not be empty");
  return d;
}

PBoxDocument load_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IOError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

std::string document_json(const PBox& pbox, const std::optional<std::string>& name) {
  Json doc;
  if (name) doc["name"] = *name;
  doc["domain"] = pbox.domain().labels();
  doc["lower"] = strings(pbox.low());
  doc["upper"] = strings(pbox.up());
  return doc.dump(2) + "\n";
}

std::string extremes_json(const PBox& pbox, const std::vector<ExtremePoint>& extremes) {
  Json doc;
  doc["domain"] = pbox.domain().labels();
  doc["count"] = extremes.size();
  Json list = Json::array();
  for (const auto& e : extremes) {
    Json item;
    item["F"] = strings(e.cdf.values());
    item["p"] = strings(to_mass(e.cdf).masses());
    Json w = Json::array();
    for (const auto& g : e.witnesses) w.push_back(g.str());
    item["witnesses"] = std::move(w);
    list.push_back(std::move(item));
  }
  doc["extremes"] = std::move(list);
  return doc.dump(2) + "\n";
}

std::vector<StepCDF> read_extremes_json(std::string_view json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text.begin(), json_text.end());
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("extremes")) throw Error(ErrorCode::ParseError, "missing \"extremes\"");
  const Domain dom(string_array(doc, "domain", true));
  std::vector<StepCDF> out;
  for (const auto& item : doc.at("extremes")) {
    out.emplace_back(dom, parse_rationals(string_array(item, "F", true)));
  }
  return out;
}

std::string fan_json(const FanGraph& fan) {
  Json doc;
  Json nodes = Json::array();
  for (std::size_t i = 0; i < fan.nodes.size(); ++i) {
    Json node;
    node["id"] = i;
    node["family"] = fan.nodes[i].str();
    node["point"] = fan.point_of[i];
    nodes.push_back(std::move(node));
  }
  doc["nodes"] = std::move(nodes);
  Json edges = Json::array();
  for (const auto& e : fan.edges) {
    const std::size_t n = fan.nodes[e.from].domain_size();
    Json edge;
    edge["from"] = e.from;
    edge["to"] = e.to;
    edge["removed"] = to_string(n, e.removed);
    edge["added"] = to_string(n, e.added);
    edge["same_point"] = e.same_point;
    edges.push_back(std::move(edge));
  }
  doc["edges"] = std::move(edges);
  Json points = Json::array();
  for (std::size_t p = 0; p < fan.points.size(); ++p) {
    Json point;
    point["id"] = p;
    point["F"] = strings(fan.points[p].values());
    points.push_back(std::move(point));
  }
  doc["points"] = std::move(points);
  Json quotient = Json::array();
  for (const auto& [p, q] : fan.quotient_edges) quotient.push_back(Json::array({p, q}));
  doc["quotient_edges"] = std::move(quotient);
  return doc.dump(2) + "\n";
}

std::string fan_dot(const FanGraph& fan) {
  std::ostringstream os;
  os << "graph fan {\n";
  os << "  node [shape=box, fontname=\"monospace\"];\n";
  os << "  subgraph cluster_mescs {\n    label=\"feasible MESCs\";\n";
  for (std::size_t i = 0; i < fan.nodes.size(); ++i) {
    os << "    m" << i << " [label=\"" << escape_dot(fan.nodes[i].str()) << "\\nF = "
       << cdf_text(fan.points[fan.point_of[i]]) << "\"];\n";
  }
  for (const auto& e : fan.edges) {
    const std::size_t n = fan.nodes[e.from].domain_size();
    os << "    m" << e.from << " -- m" << e.to << " [style=" << (e.same_point ? "dashed" : "solid") << ", label=\""
       << escape_dot(to_string(n, e.removed) + " / " + to_string(n, e.added)) << "\"];\n";
  }
  os << "  }\n";
  os << "  subgraph cluster_points {\n    label=\"extreme points\";\n";
  for (std::size_t p = 0; p < fan.points.size(); ++p) {
    os << "    x" << p << " [shape=ellipse, label=\"" << cdf_text(fan.points[p]) << "\"];\n";
  }
  for (const auto& [p, q] : fan.quotient_edges) os << "    x" << p << " -- x" << q << " [style=solid];\n";
  os << "  }\n";
  os << "}\n";
  return os.str();
}

}  // namespace pbx
