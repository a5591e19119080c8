#include "pqml/frame_io.hpp"

#include <fstream>
#include <sstream>

#include "pqml/errors.hpp"

namespace pqml {
namespace {

std::size_t world_index(const KripkeFrame& f, const nlohmann::json& name) {
  if (!name.is_string()) throw FrameError("world names must be strings");
  auto w = f.find(name.get<std::string>());
  if (!w) throw FrameError("unknown world '" + name.get<std::string>() + "'");
  return *w;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

GeneralFrame frame_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object() || !j.contains("worlds")) throw FrameError("frame JSON needs a \"worlds\" array");
    std::vector<std::string> names = j.at("worlds").get<std::vector<std::string>>();
    KripkeFrame names_only(names, {});
    std::vector<Edge> edges;
    if (j.contains("relation")) {
      for (const auto& pair : j.at("relation")) {
        if (!pair.is_array() || pair.size() != 2) throw FrameError("relation entries must be pairs");
        edges.emplace_back(world_index(names_only, pair[0]), world_index(names_only, pair[1]));
      }
    }
    KripkeFrame base(std::move(names), edges);
    if (!j.contains("admissible") || (j.at("admissible").is_string() && j.at("admissible") == "full"))
      return GeneralFrame::full(std::move(base));
    const auto& adm = j.at("admissible");
    if (!adm.is_array()) throw FrameError("\"admissible\" must be \"full\" or an array of world lists");
    std::vector<WorldSet> sets;
    for (const auto& s : adm) {
      WorldSet x;
      for (const auto& name : s) x = x.with(world_index(base, name));
      sets.push_back(x);
    }
    const std::size_t n = base.size();
    return GeneralFrame(std::move(base), AdmissibleFamily::of(n, std::move(sets)));
  } catch (const nlohmann::json::exception& e) {
    throw FrameError(std::string("malformed frame JSON: ") + e.what());
  }
}

GeneralFrame frame_from_json_text(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FrameError(std::string("malformed frame JSON: ") + e.what());
  }
  return frame_from_json(j);
}

GeneralFrame load_frame_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FrameError("cannot open frame file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return frame_from_json_text(ss.str());
}

nlohmann::json frame_to_json(const GeneralFrame& g) {
  const KripkeFrame& f = g.base();
  nlohmann::json j;
  j["worlds"] = f.names();
  auto rel = nlohmann::json::array();
  for (auto [a, b] : f.edges()) rel.push_back({f.name(a), f.name(b)});
  j["relation"] = rel;
  if (g.admissible().is_powerset()) {
    j["admissible"] = "full";
  } else {
    auto adm = nlohmann::json::array();
    for (WorldSet x : g.admissible().sets()) {
      auto members = nlohmann::json::array();
      x.for_each([&](std::size_t w) { members.push_back(f.name(w)); });
      adm.push_back(members);
    }
    j["admissible"] = adm;
  }
  return j;
}

std::string frame_to_json_text(const GeneralFrame& g) { return frame_to_json(g).dump(); }

std::string format_set(const KripkeFrame& f, WorldSet x) {
  std::string out = "{";
  bool first = true;
  x.for_each([&](std::size_t w) {
    if (!first) out += ',';
    out += f.name(w);
    first = false;
  });
  return out + "}";
}

WorldSet parse_set(const KripkeFrame& f, std::string_view text) {
  std::string s(text);
  if (!s.empty() && s.front() == '{') s.erase(0, 1);
  if (!s.empty() && s.back() == '}') s.pop_back();
  WorldSet out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    item = item.substr(b, item.find_last_not_of(" \t") - b + 1);
    auto w = f.find(item);
    if (!w) throw FrameError("unknown world '" + item + "'");
    out = out.with(*w);
  }
  return out;
}

std::string frame_to_dot(const KripkeFrame& f, std::string_view graph_name) {
  std::ostringstream os;
  os << "digraph " << graph_name << " {\n";
  for (const auto& name : f.names()) os << "  " << quoted(name) << ";\n";
  for (auto [a, b] : f.edges()) os << "  " << quoted(f.name(a)) << " -> " << quoted(f.name(b)) << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace pqml
