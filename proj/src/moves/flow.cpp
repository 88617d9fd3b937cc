#include "qlpa/moves.hpp"

namespace qlpa {
namespace {

constexpr std::pair<FlowMove::Kind, const char*> kKindNames[] = {
    {FlowMove::Kind::InSplit, "in_split"},         {FlowMove::Kind::InAmalgamate, "in_amalgamate"},
    {FlowMove::Kind::OutSplit, "out_split"},       {FlowMove::Kind::OutAmalgamate, "out_amalgamate"},
    {FlowMove::Kind::Expand, "expand"},            {FlowMove::Kind::Contract, "contract"},
};

bool takes_vertex(FlowMove::Kind k) {
  return k == FlowMove::Kind::Expand || k == FlowMove::Kind::Contract;
}

}  // namespace

std::string to_string(FlowMove::Kind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  throw InternalError("unnamed flow move kind");
}

nlohmann::ordered_json flow_move_to_json(const FlowMove& m) {
  nlohmann::ordered_json j;
  j["move"] = to_string(m.kind);
  if (takes_vertex(m.kind))
    j["vertex"] = m.vertex;
  else
    j["partition"] = partition_to_json(m.partition);
  return j;
}

FlowMove flow_move_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("move") || !j.at("move").is_string())
    throw PreconditionError("flow move must be an object with a string \"move\" field");
  const std::string name = j.at("move").get<std::string>();
  for (const auto& [kind, kname] : kKindNames) {
    if (name != kname) continue;
    FlowMove m{kind, {}, {}};
    if (takes_vertex(kind)) {
      if (!j.contains("vertex") || !j.at("vertex").is_string())
        throw PreconditionError("move '" + name + "' needs a string \"vertex\"");
      m.vertex = j.at("vertex").get<std::string>();
    } else {
      if (!j.contains("partition"))
        throw PreconditionError("move '" + name + "' needs a \"partition\"");
      m.partition = partition_from_json(j.at("partition"));
    }
    return m;
  }
  throw PreconditionError("unknown flow move '" + name + "'");
}

Quiver apply_flow_move(const Quiver& q, const FlowMove& m) {
  switch (m.kind) {
    case FlowMove::Kind::InSplit: return in_split(q, m.partition);
    case FlowMove::Kind::InAmalgamate: return in_amalgamate(q, m.partition);
    case FlowMove::Kind::OutSplit: return out_split(q, m.partition);
    case FlowMove::Kind::OutAmalgamate: return out_amalgamate(q, m.partition);
    case FlowMove::Kind::Expand: return expand(q, m.vertex);
    case FlowMove::Kind::Contract: return contract(q, m.vertex);
  }
  throw InternalError("unhandled flow move kind");
}

FlowResult apply_flow_sequence(const Quiver& q, const std::vector<FlowMove>& moves) {
  FlowResult out{q, {q}};
  for (std::size_t i = 0; i < moves.size(); ++i) {
    try {
      out.result = apply_flow_move(out.result, moves[i]);
    } catch (const FlowError&) {
      throw;
    } catch (const Error& e) {
      throw FlowError(i, to_string(moves[i].kind) + ": " + e.what());
    }
    out.log.push_back(out.result);
  }
  return out;
}

}  // namespace qlpa
