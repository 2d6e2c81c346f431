#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "shrub/analysis.hpp"
#include "shrub/hanf.hpp"
#include "shrub/patterns.hpp"
#include "shrub/witness.hpp"

namespace shrub {

using Json = nlohmann::json;

// "n m", m lines "u v", then optional "c <k> <v...>" lines.
std::string write_graph(const Graph& g);
std::string write_graph(const ColoredGraph& g);
ColoredGraph read_colored_graph(std::istream& in);
ColoredGraph read_colored_graph_text(const std::string& text);
Graph read_graph_text(const std::string& text);
ColoredGraph load_graph_file(const std::string& path);

Json to_json(const FlipSpec& s);
FlipSpec flip_spec_from_json(const Json& j, int n);
Json to_json(const PatternCoordinates& c);
Json to_json(const WitnessReport& w);
Json to_json(const ScTrace& t);
Json to_json(const Certificate& c);
Json to_json(const BallCensus& c);
Json to_json(const NibbleReport& r);

}  // namespace shrub
