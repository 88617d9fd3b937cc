#include "qlpa/equivalence.hpp"

#include "qlpa/error.hpp"

namespace qlpa {

Report check_collapse_preconditions(const Quiver& q, const VertexSet& keep) {
  Report report;
  report.add("keep-nonempty", !keep.empty(), keep.empty() ? "kept set is empty" : "");

  VertexSet known, unknown;
  for (const auto& v : keep) (q.find_vertex(v) ? known : unknown).insert(v);
  report.add("keep-subset", unknown.empty(),
             unknown.empty() ? "" : "unknown vertex '" + *unknown.begin() + "'");

  std::string stray_sink;
  for (const auto& s : sinks(q))
    if (!known.count(s)) {
      stray_sink = s;
      break;
    }
  report.add("sinks-in-keep", stray_sink.empty(),
             stray_sink.empty() ? "" : "sink '" + stray_sink + "' is not kept");

  auto cycle = find_cycle_avoiding(q, known);
  std::string cycle_desc;
  if (cycle)
    for (const auto& e : *cycle) cycle_desc += (cycle_desc.empty() ? "" : " ") + e;
  report.add("cycles-meet-keep", !cycle, cycle ? "cycle avoids keep: " + cycle_desc : "");

  std::string stranded;
  for (const auto& v : q.vertices())
    if (!known.count(v) && !reaches_set(q, v, known)) {
      stranded = v;
      break;
    }
  report.add("dropped-reach-keep", stranded.empty(),
             stranded.empty() ? "" : "'" + stranded + "' reaches no kept vertex");
  return report;
}

QPrimeFamily q_prime_family(std::shared_ptr<const Quiver> q, Field f, const CollapseResult& c) {
  QPrimeFamily family;
  for (const auto& v : c.q_prime.vertices()) family.q.emplace(v, Element::vertex(q, f, v));
  for (const auto& [id, path] : c.edge_origin) family.t.emplace(id, Element::path(q, f, path));
  return family;
}

Report verify_q_prime_family(std::shared_ptr<const Quiver> q, const CollapseResult& c, Field f) {
  const Quiver& qp = c.q_prime;
  QPrimeFamily fam = q_prime_family(q, f, c);
  Element zero(q, f);
  Report report;
  auto same = [](const Element& a, const Element& b) { return equal_in_algebra(a, b); };

  for (const auto& [v, qv] : fam.q) {
    report.add("nonzero(" + v + ")", !normal_form(qv).is_zero());
    report.add("idempotent(" + v + ")", same(qv * qv, qv));
    for (const auto& [w, qw] : fam.q)
      if (v < w) report.add("orthogonal(" + v + "," + w + ")", same(qv * qw, zero));
  }
  for (const auto& e : qp.edges()) {
    const Element& t = fam.t.at(e.id);
    Element ts = star(t);
    const Element& qs = fam.q.at(e.src);
    const Element& qr = fam.q.at(e.dst);
    report.add("source(" + e.id + ")", same(qs * t, t));
    report.add("range(" + e.id + ")", same(t * qr, t));
    report.add("ghost-source(" + e.id + ")", same(qr * ts, ts));
    report.add("ghost-range(" + e.id + ")", same(ts * qs, ts));
    for (const auto& g : qp.edges()) {
      Element expected = e.id == g.id ? qr : zero;
      report.add("ghost-product(" + e.id + "," + g.id + ")",
                 same(ts * fam.t.at(g.id), expected));
    }
  }
  for (std::size_t v = 0; v < qp.vertex_count(); ++v) {
    if (!qp.is_regular(v)) continue;
    Element sum(q, f);
    for (std::size_t e : qp.out_edges(v)) {
      const Element& t = fam.t.at(qp.edge(e).id);
      sum = sum + t * star(t);
    }
    report.add("ck2(" + qp.vertex(v) + ")", same(fam.q.at(qp.vertex(v)), sum));
  }
  return report;
}

Report verify_bridge_identities(std::shared_ptr<const Quiver> q, const VertexSet& keep, Field f) {
  Report report;
  auto bridges = bridge_paths(*q, keep);
  for (std::size_t v = 0; v < q->vertex_count(); ++v) {
    const std::string& id = q->vertex(v);
    const auto& bv = bridges.at(id);
    report.add("empty-implies-kept(" + id + ")", !bv.empty() || keep.count(id));
    if (bv.empty()) continue;
    report.add("nonempty-implies-regular(" + id + ")", q->is_regular(v));
    Element sum(q, f);
    for (const Path& p : bv) {
      Element a = Element::path(q, f, p);
      sum = sum + a * star(a);
    }
    report.add("bridge-identity(" + id + ")", equal_in_algebra(Element::vertex(q, f, id), sum));
  }
  return report;
}

FullnessResult verify_fullness(const Quiver& q, const VertexSet& keep) {
  FullnessResult out;
  out.trace = hereditary_saturated_closure(q, keep);
  out.full = out.trace.closure == q.vertex_set();
  return out;
}

}  // namespace qlpa
