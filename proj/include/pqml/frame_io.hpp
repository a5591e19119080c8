#pragma once

// JSON and DOT formats for frames.
//
//   {"worlds": ["w0", ...],
//    "relation": [["w0", "w1"], ...],
//    "admissible": [["w0"], ["w0", "w1"], ...]}
//
// "admissible" absent or the string "full" means the powerset. Output is
// canonical: relation pairs in index order, admissible sets in canonical
// set order, so writing, reading and writing again is byte-identical.

#include <string>
#include <string_view>

#include "json.hpp"
#include "pqml/frame.hpp"

namespace pqml {

GeneralFrame frame_from_json(const nlohmann::json& j);
GeneralFrame frame_from_json_text(std::string_view text);
GeneralFrame load_frame_file(const std::string& path);

nlohmann::json frame_to_json(const GeneralFrame& g);
std::string frame_to_json_text(const GeneralFrame& g);

/// "{a,b}" using world names, members in index order.
std::string format_set(const KripkeFrame& f, WorldSet x);
/// Parses "a,b" or "{a,b}" (world names); throws FrameError on unknown names.
WorldSet parse_set(const KripkeFrame& f, std::string_view text);

std::string frame_to_dot(const KripkeFrame& f, std::string_view graph_name = "frame");

}  // namespace pqml
