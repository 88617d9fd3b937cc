#include "qlpa/certificate.hpp"

#include <memory>
#include <set>

#include "qlpa/equivalence.hpp"
#include "qlpa/error.hpp"
#include "qlpa/grading.hpp"
#include "qlpa/isomorphism.hpp"
#include "qlpa/matrix.hpp"
#include "qlpa/moves.hpp"
#include "qlpa/quiver_io.hpp"
#include "qlpa/shift_equivalence.hpp"

namespace qlpa {
namespace {

using ojson = nlohmann::ordered_json;

constexpr const char* kCollapseJustification =
    "collapse (Crisp-Gow move): L(Q) and L(Q') are (1/n)Z-graded Morita equivalent through the "
    "full homogeneous idempotent given by the kept vertices";
constexpr const char* kShiftJustification =
    "elementary strong shift equivalence of incidence matrices; for sink-free quivers both sides "
    "are collapses of the bridging quiver, so the Leavitt path algebras are Z-graded Morita "
    "equivalent";

struct Outcome {
  Quiver result;
  ojson payload = ojson::object();
  Report report;
  std::string justification;
};

const nlohmann::json& param(const nlohmann::json& params, const char* key) {
  if (!params.is_object() || !params.contains(key))
    throw PreconditionError(std::string("missing parameter \"") + key + "\"");
  return params.at(key);
}

std::string string_param(const nlohmann::json& params, const char* key) {
  const auto& v = param(params, key);
  if (!v.is_string()) throw PreconditionError(std::string("parameter \"") + key + "\" must be a string");
  return v.get<std::string>();
}

std::size_t count_param(const nlohmann::json& params, const char* key) {
  const auto& v = param(params, key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    throw PreconditionError(std::string("parameter \"") + key + "\" must be a nonnegative integer");
  return v.get<std::size_t>();
}

ojson levels_json(const ClosureTrace& t) {
  ojson levels = ojson::array();
  for (const auto& level : t.levels) levels.push_back(vertex_set_to_json(level));
  return levels;
}

void add_no_sinks(Report& report, const Quiver& a, const Quiver& b) {
  auto sa = sinks(a), sb = sinks(b);
  bool ok = sa.empty() && sb.empty();
  report.add("no-sinks", ok,
             ok ? "" : "sink '" + (sa.empty() ? *sb.begin() : *sa.begin()) + "'");
}

// Full verification of collapse(q, keep): preconditions, bridge identities,
// the Q'-family relations, fullness and the (1/n)Z grading.
std::pair<CollapseResult, ojson> verify_collapse(const Quiver& q, const VertexSet& keep,
                                                 Report& report) {
  Report pre = check_collapse_preconditions(q, keep);
  report.append(pre, "preconditions/");
  if (!pre.ok()) throw PreconditionError("collapse preconditions fail: " +
                                         pre.first_failure()->name + " " +
                                         pre.first_failure()->detail);
  CollapseResult c = collapse(q, keep);
  auto qp = std::make_shared<const Quiver>(q);
  Report bridge = verify_bridge_identities(qp, keep);
  Report family = verify_q_prime_family(qp, c);
  FullnessResult full = verify_fullness(q, keep);
  report.append(bridge, "bridge/");
  report.append(family, "family/");
  report.add("fullness", full.full, full.full ? "" : "closure of keep misses some vertex");

  ojson payload;
  payload["n_max"] = c.n_max;
  ojson origin = ojson::object();
  for (const auto& [id, path] : c.edge_origin) origin[id] = q.path_ids(path);
  payload["origin"] = origin;
  payload["preconditions"] = pre.to_json();
  payload["bridge"] = bridge.to_json();
  payload["family"] = family.to_json();
  payload["fullness"] = {{"full", full.full}, {"levels", levels_json(full.trace)}};
  try {
    Grading g = solve_collapse_grading(q, c);
    bool unit = true;
    for (const auto& [id, path] : c.edge_origin)
      if (monomial_degree(q, g, {path, q.trivial_path(q.path_range(path))}) != 1) unit = false;
    report.add("grading/origin-degree-one", unit);
    payload["grading"] = grading_to_json(g);
  } catch (const GradingInfeasible& e) {
    report.add("grading/origin-degree-one", false, e.what());
    payload["grading"] = {{"infeasible", e.core()}};
  }
  return {std::move(c), std::move(payload)};
}

// Isomorphism from collapse(big, keep).q_prime onto `small`: kept vertices
// map to themselves and each e_mu to the single edge of mu that `small` has.
Report collapse_matches(const Quiver& big, const VertexSet& keep, const Quiver& small,
                        const std::string& name, ojson& payload) {
  Report report;
  Report pre = check_collapse_preconditions(big, keep);
  report.append(pre, name + "/preconditions/");
  if (!pre.ok()) return report;
  CollapseResult c = collapse(big, keep);
  IsoWitness w;
  std::string problem;
  for (const auto& v : c.q_prime.vertices()) w.vertex_map[v] = v;
  for (const auto& [id, path] : c.edge_origin) {
    std::vector<std::string> shared;
    for (const auto& e : big.path_ids(path))
      if (small.find_edge(e)) shared.push_back(e);
    if (shared.size() != 1) {
      problem = "origin path of " + id + " carries " + std::to_string(shared.size()) +
                " edges of the smaller quiver";
      break;
    }
    w.edge_map[id] = shared.front();
  }
  bool ok = problem.empty() && verify_isomorphism(c.q_prime, small, w);
  report.add(name + "/isomorphic", ok, problem);
  payload[name] = {{"n_max", c.n_max}, {"edge_map", w.edge_map}};
  return report;
}

Factorization split_factorization(const Quiver& original, const Quiver& split,
                                  const Partition& p, Fiber fiber) {
  const bool out = fiber == Fiber::Source;
  auto copy = [&](const std::string& v, std::size_t i) {
    return p.block_count(v) == 0 ? v : v + (out ? "^" : "_") + std::to_string(i);
  };
  std::map<std::string, std::size_t> block;
  for (const auto& [v, blocks] : p.blocks)
    for (std::size_t i = 0; i < blocks.size(); ++i)
      for (const auto& e : blocks[i]) block[e] = i + 1;

  const std::size_t n = original.vertex_count(), m = split.vertex_count();
  IntMatrix division(n, m), edges_out(m, n), edges_in(n, m), merge(m, n);
  for (std::size_t v = 0; v < n; ++v) {
    const std::string& id = original.vertex(v);
    std::size_t copies = std::max<std::size_t>(1, p.block_count(id));
    for (std::size_t i = 1; i <= copies; ++i) {
      std::size_t c = split.vertex_index(copy(id, i));
      division(v, c) = 1;
      merge(c, v) = 1;
    }
  }
  for (std::size_t e = 0; e < original.edge_count(); ++e) {
    const Edge& ed = original.edge(e);
    std::size_t i = block.at(ed.id);
    if (out)
      edges_out(split.vertex_index(copy(ed.src, i)), original.vertex_index(ed.dst)) += 1;
    else
      edges_in(original.vertex_index(ed.src), split.vertex_index(copy(ed.dst, i))) += 1;
  }
  return out ? Factorization{division, edges_out} : Factorization{edges_in, merge};
}

void check_factorization(Report& report, const std::string& prefix, const Quiver& a,
                         const Quiver& b, const Factorization& f) {
  IntMatrix ia = incidence(a), ib = incidence(b);
  bool shapes = f.l.rows() == ia.rows() && f.l.cols() == ib.rows() && f.r.rows() == ib.rows() &&
                f.r.cols() == ia.rows();
  report.add(prefix + "A=LR", shapes && f.l * f.r == ia);
  report.add(prefix + "B=RL", shapes && f.r * f.l == ib);
}

ojson factorization_json(const Factorization& f) {
  return {{"l", matrix_to_json(f.l)}, {"r", matrix_to_json(f.r)}};
}

Outcome split_move(const Quiver& current, const std::string& move, const nlohmann::json& params) {
  Partition p = partition_from_json(param(params, "partition"));
  Outcome o;
  Factorization f;
  if (move == "in_split") {
    o.result = in_split(current, p);
    f = split_factorization(current, o.result, p, Fiber::Range);
  } else if (move == "out_split") {
    o.result = out_split(current, p);
    f = split_factorization(current, o.result, p, Fiber::Source);
  } else if (move == "in_amalgamate") {
    o.result = in_amalgamate(current, p);
    Factorization g = split_factorization(o.result, current, p, Fiber::Range);
    f = {g.r, g.l};
  } else {
    o.result = out_amalgamate(current, p);
    Factorization g = split_factorization(o.result, current, p, Fiber::Source);
    f = {g.r, g.l};
  }
  add_no_sinks(o.report, current, o.result);
  check_factorization(o.report, "", current, o.result, f);
  o.payload["factorization"] = factorization_json(f);
  o.justification = kShiftJustification;
  return o;
}

Outcome esse_move(const Quiver& current, const nlohmann::json& params) {
  Outcome o;
  o.result = quiver_from_json(param(params, "target"));
  EsseWitness w = esse_witness_from_json(param(params, "witness"));
  add_no_sinks(o.report, current, o.result);
  Report esse = verify_esse(current, o.result, w);
  o.report.append(esse, "esse/");
  o.payload["esse"] = esse.to_json();
  if (esse.ok()) {
    // Each side is the collapse of the bridge onto its vertices, e_{ab}
    // matching the edge whose theta image is ab.
    auto side = [&](const Quiver& qi, const VertexSet& keep,
                    const std::map<std::string, std::pair<std::string, std::string>>& theta,
                    const std::string& name) {
      Report pre = check_collapse_preconditions(w.bridge, keep);
      o.report.append(pre, name + "/preconditions/");
      if (!pre.ok()) return;
      CollapseResult c = collapse(w.bridge, keep);
      IsoWitness iso;
      for (const auto& v : keep) iso.vertex_map[v] = v;
      std::map<std::string, std::string> by_path;
      for (const auto& [e, path] : theta) by_path[path.first + "/" + path.second] = e;
      for (const auto& [id, path] : c.edge_origin) {
        auto it = by_path.find(id.substr(3));
        if (it != by_path.end()) iso.edge_map[id] = it->second;
      }
      o.report.add(name + "/isomorphic", verify_isomorphism(c.q_prime, qi, iso));
    };
    side(current, w.side1, w.theta1, "collapse-to-side1");
    side(o.result, w.side2, w.theta2, "collapse-to-side2");
  }
  o.justification = kShiftJustification;
  return o;
}

Outcome higher_edge_move(const Quiver& current, std::size_t n) {
  Outcome o;
  o.result = higher_edge(current, n);
  add_no_sinks(o.report, current, o.result);
  ojson chain = ojson::array();
  Quiver step = current;
  for (std::size_t k = 1; k < n; ++k) {
    Quiver next = higher_edge(current, k + 1);
    // Vertices of Q^[k+1] carry the ids of the edges of Q^[k].
    Factorization f{IntMatrix(step.vertex_count(), step.edge_count()),
                    IntMatrix(step.edge_count(), step.vertex_count())};
    for (std::size_t e = 0; e < step.edge_count(); ++e) {
      f.l(step.source(e), e) = 1;
      f.r(e, step.range(e)) = 1;
    }
    bool ids_match = next.vertex_count() == step.edge_count();
    for (std::size_t e = 0; ids_match && e < step.edge_count(); ++e)
      ids_match = next.vertex(e) == step.edge(e).id;
    o.report.add("step" + std::to_string(k) + "/vertex-ids", ids_match);
    check_factorization(o.report, "step" + std::to_string(k) + "/", step, next, f);
    chain.push_back(factorization_json(f));
    step = std::move(next);
  }
  o.payload["chain"] = chain;
  o.justification =
      "Q and Q^[n] are strong shift equivalent through the chain Q^[k] -> Q^[k+1]; for sink-free "
      "quivers the Leavitt path algebras are Z-graded Morita equivalent";
  return o;
}

Outcome perform(const Quiver& current, const std::string& move, const nlohmann::json& params) {
  Outcome o;
  if (move == "collapse") {
    VertexSet keep = vertex_set_from_json(param(params, "keep"));
    auto [c, payload] = verify_collapse(current, keep, o.report);
    o.result = c.q_prime;
    o.payload = std::move(payload);
    o.justification = kCollapseJustification;
  } else if (move == "uncollapse") {
    Quiver target = quiver_from_json(param(params, "target"));
    VertexSet keep = vertex_set_from_json(param(params, "keep"));
    auto [c, payload] = verify_collapse(target, keep, o.report);
    IsoResult iso = is_isomorphic(c.q_prime, current);
    o.report.add("collapse-isomorphic", iso.isomorphic(), iso.reason);
    o.result = std::move(target);
    o.payload = std::move(payload);
    o.justification = kCollapseJustification;
  } else if (move == "isomorphism") {
    o.result = quiver_from_json(param(params, "target"));
    IsoResult iso = is_isomorphic(current, o.result);
    o.report.add("isomorphic", iso.isomorphic(), iso.reason);
    if (iso.witness)
      o.payload = {{"vertex_map", iso.witness->vertex_map}, {"edge_map", iso.witness->edge_map}};
    o.justification = "isomorphic quivers have isomorphic Leavitt path algebras";
  } else if (move == "in_split" || move == "out_split" || move == "in_amalgamate" ||
             move == "out_amalgamate") {
    return split_move(current, move, params);
  } else if (move == "source_eliminate") {
    std::string v = string_param(params, "vertex");
    o.result = source_eliminate(current, v);
    VertexSet keep = current.vertex_set();
    keep.erase(v);
    o.report.append(collapse_matches(current, keep, o.result, "collapse", o.payload));
    o.justification =
        "source elimination is the collapse dropping a source: Z-graded Morita equivalent";
  } else if (move == "expand" || move == "contract") {
    std::string v = string_param(params, "vertex");
    if (move == "expand") {
      o.result = expand(current, v);
      o.report.append(collapse_matches(o.result, current.vertex_set(), current, "collapse", o.payload));
    } else {
      o.result = contract(current, v);
      o.report.append(collapse_matches(current, o.result.vertex_set(), o.result, "collapse", o.payload));
    }
    o.justification =
        "expansion is the collapse dropping the new vertex: (1/2)Z-graded Morita equivalent";
  } else if (move == "heads") {
    o.result = attach_heads(current, count_param(params, "n"));
    o.report.append(collapse_matches(o.result, current.vertex_set(), current, "collapse", o.payload));
    o.justification = "M_nQ collapses onto the vertices of Q: Z-graded Morita equivalent";
  } else if (move == "higher_edge") {
    return higher_edge_move(current, count_param(params, "n"));
  } else if (move == "esse") {
    return esse_move(current, params);
  } else if (move == "out_delay" || move == "in_delay") {
    DrinenVector d = drinen_from_json(param(params, "vector"));
    if (move == "out_delay") {
      o.result = out_delay(current, d);
      ProperResult proper = is_strictly_proper(d, current);
      o.report.add("strictly-proper", proper.strictly_proper, proper.reason);
    } else {
      o.result = in_delay(current, d);
    }
    o.report.append(collapse_matches(o.result, current.vertex_set(), current, "collapse", o.payload));
    o.justification =
        "the delayed quiver collapses onto the original vertices: (1/n)Z-graded Morita equivalent";
  } else {
    throw PreconditionError("unknown move '" + move + "'");
  }
  return o;
}

std::string conclusion_for(const Quiver& initial, const Quiver& final_quiver) {
  std::string ends = "initial " + quiver_hash(initial).substr(0, 16) + ", final " +
                     quiver_hash(final_quiver).substr(0, 16);
  if (sinks(initial).empty() && sinks(final_quiver).empty())
    return "kQ/J^2 and kQ'/J^2 are singularly equivalent (" + ends +
           "): the moves give a graded Morita equivalence of the Leavitt path algebras, and for "
           "finite quivers without sinks this is equivalent to singular equivalence of the "
           "radical square zero algebras (Chen-Yang criterion)";
  return "L_k(Q) and L_k(Q') are graded Morita equivalent (" + ends +
         "); a quiver has sinks, so the singular equivalence criterion does not apply and no "
         "singular equivalence is claimed";
}

}  // namespace

std::vector<MoveRequest> move_requests_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw PreconditionError("moves must be an array");
  std::vector<MoveRequest> out;
  for (const auto& m : j) {
    if (!m.is_object() || !m.contains("move") || !m.at("move").is_string())
      throw PreconditionError("each move needs a string \"move\"");
    out.push_back({m.at("move").get<std::string>(),
                   m.contains("params") ? m.at("params") : nlohmann::json::object()});
  }
  return out;
}

Certificate build_certificate(const Quiver& initial, const std::vector<MoveRequest>& moves) {
  Certificate cert;
  cert.initial = initial;
  Quiver current = initial;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    Outcome o;
    try {
      o = perform(current, moves[i].move, moves[i].params);
    } catch (const std::exception& e) {
      throw PreconditionError("move " + std::to_string(i) + " (" + moves[i].move + "): " + e.what());
    }
    if (const Check* bad = o.report.first_failure())
      throw PreconditionError("move " + std::to_string(i) + " (" + moves[i].move +
                              ") fails check " + bad->name +
                              (bad->detail.empty() ? "" : ": " + bad->detail));
    cert.moves.push_back({moves[i].move, ojson(moves[i].params), quiver_hash(o.result),
                          std::move(o.payload), std::move(o.justification)});
    current = std::move(o.result);
  }
  cert.final_quiver = current;
  cert.conclusion = conclusion_for(initial, current);
  return cert;
}

ojson certificate_to_json(const Certificate& c) {
  ojson j;
  j["schema_version"] = kCertificateSchemaVersion;
  j["initial"] = quiver_to_json(c.initial);
  j["initial_hash"] = quiver_hash(c.initial);
  ojson moves = ojson::array();
  for (const auto& m : c.moves) {
    ojson r;
    r["move"] = m.move;
    r["params"] = m.params;
    r["result_hash"] = m.result_hash;
    r["payload"] = m.payload;
    r["justification"] = m.justification;
    moves.push_back(std::move(r));
  }
  j["moves"] = std::move(moves);
  j["final"] = quiver_to_json(c.final_quiver);
  j["final_hash"] = quiver_hash(c.final_quiver);
  j["conclusion"] = c.conclusion;
  return j;
}

CertificateCheck check_certificate(const nlohmann::json& cert) {
  CertificateCheck out;
  auto fail = [&](std::optional<std::size_t> step, std::string reason) {
    out.valid = false;
    out.failed_step = step;
    out.reason = std::move(reason);
    return out;
  };
  Quiver current;
  try {
    if (!cert.is_object()) return fail(std::nullopt, "certificate must be a JSON object");
    if (!cert.contains("schema_version") || cert.at("schema_version") != kCertificateSchemaVersion)
      return fail(std::nullopt, "unsupported schema_version");
    for (const char* key : {"initial", "initial_hash", "moves", "final_hash", "conclusion"})
      if (!cert.contains(key)) return fail(std::nullopt, std::string("missing \"") + key + "\"");
    current = quiver_from_json(cert.at("initial"));
    if (cert.at("initial_hash") != quiver_hash(current))
      return fail(std::nullopt, "initial_hash does not match the initial quiver");
    if (!cert.at("moves").is_array()) return fail(std::nullopt, "moves must be an array");
  } catch (const std::exception& e) {
    return fail(std::nullopt, e.what());
  }

  const auto& moves = cert.at("moves");
  for (std::size_t i = 0; i < moves.size(); ++i) {
    const auto& m = moves[i];
    try {
      for (const char* key : {"move", "params", "result_hash", "payload", "justification"})
        if (!m.contains(key)) return fail(i, std::string("missing \"") + key + "\"");
      Outcome o = perform(current, m.at("move").get<std::string>(), m.at("params"));
      if (const Check* bad = o.report.first_failure())
        return fail(i, "check " + bad->name + " fails" + (bad->detail.empty() ? "" : ": " + bad->detail));
      if (m.at("result_hash") != quiver_hash(o.result))
        return fail(i, "result_hash does not match the replayed quiver");
      if (nlohmann::json(o.payload) != m.at("payload"))
        return fail(i, "payload differs from the recomputed verification");
      if (m.at("justification") != o.justification)
        return fail(i, "justification differs from the move's licensing result");
      current = std::move(o.result);
    } catch (const std::exception& e) {
      return fail(i, e.what());
    }
  }
  try {
    if (cert.at("final_hash") != quiver_hash(current))
      return fail(std::nullopt, "final_hash does not match the replayed quiver");
    if (cert.contains("final") && !(quiver_from_json(cert.at("final")) == current))
      return fail(std::nullopt, "final quiver does not match the replay");
    if (cert.at("conclusion") != conclusion_for(quiver_from_json(cert.at("initial")), current))
      return fail(std::nullopt, "conclusion does not follow from the replayed chain");
  } catch (const std::exception& e) {
    return fail(std::nullopt, e.what());
  }
  out.valid = true;
  return out;
}

}  // namespace qlpa
