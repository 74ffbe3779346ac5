#pragma once

#include <map>
#include <ostream>

#include "vmirror/ingest.hpp"
#include "vmirror/netbuild.hpp"

namespace vmirror {

/// GraphML with node attribute "scope" and edge attribute "weight" (one
/// directed edge per arc). Nodes and arcs in ascending id order.
void write_graphml(std::ostream& out, const InteractionGraph& g,
                   const std::map<ActorId, ActorAttrs>& attrs = {});

/// DOT digraph, same ordering as write_graphml.
void write_dot(std::ostream& out, const InteractionGraph& g,
               const std::map<ActorId, ActorAttrs>& attrs = {});

}  // namespace vmirror
