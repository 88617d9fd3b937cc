#include "qlpa/cli.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qlpa/certificate.hpp"
#include "qlpa/equivalence.hpp"
#include "qlpa/error.hpp"
#include "qlpa/expr.hpp"
#include "qlpa/grading.hpp"
#include "qlpa/isomorphism.hpp"
#include "qlpa/matrix.hpp"
#include "qlpa/moves.hpp"
#include "qlpa/quiver_io.hpp"
#include "qlpa/shift_equivalence.hpp"

namespace qlpa::cli {
namespace {

using ojson = nlohmann::ordered_json;

// A verification that ran but did not pass; `body` goes to stderr as-is.
struct Rejected {
  ojson body;
};

struct Io {
  std::istream& in;
  std::ostream& out;
};

std::string read_text(Io& io, const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(io.in), {}};
  std::ifstream f(path, std::ios::binary);
  if (!f) throw PreconditionError("cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(f), {}};
}

void write_text(Io& io, const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    io.out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw PreconditionError("cannot write '" + path + "'");
  f << text;
}

nlohmann::json parse_json(const std::string& text, const std::string& what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.byte, what + ": " + e.what());
  }
}

nlohmann::json read_json(Io& io, const std::string& path) {
  return parse_json(read_text(io, path), path == "-" ? "stdin" : path);
}

// Inline JSON when the argument looks like a document, else a file path.
nlohmann::json json_arg(Io& io, const std::string& arg) {
  auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '['))
    return parse_json(arg, "argument");
  return read_json(io, arg);
}

Quiver read_quiver(Io& io, const std::string& path) {
  return quiver_from_json(read_json(io, path));
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

VertexSet split_list(const std::string& s) {
  VertexSet out;
  std::string cur;
  std::istringstream ss(s);
  while (std::getline(ss, cur, ','))
    if (!cur.empty()) out.insert(cur);
  return out;
}

ojson paths_json(const Quiver& q, const std::vector<Path>& paths) {
  ojson arr = ojson::array();
  for (const auto& p : paths) arr.push_back(q.path_ids(p));
  return arr;
}

ojson origin_json(const Quiver& q, const CollapseResult& c) {
  ojson origin = ojson::object();
  for (const auto& [id, path] : c.edge_origin) origin[id] = q.path_ids(path);
  return origin;
}

Quiver apply_move(const Quiver& q, const std::string& name, const nlohmann::json& params) {
  auto need = [&](const char* key) -> const nlohmann::json& {
    if (!params.contains(key))
      throw PreconditionError("move " + name + " needs \"" + key + "\"");
    return params.at(key);
  };
  if (name == "in_split") return in_split(q, partition_from_json(need("partition")));
  if (name == "out_split") return out_split(q, partition_from_json(need("partition")));
  if (name == "in_amalgamate") return in_amalgamate(q, partition_from_json(need("partition")));
  if (name == "out_amalgamate") return out_amalgamate(q, partition_from_json(need("partition")));
  if (name == "expand") return expand(q, need("vertex").get<std::string>());
  if (name == "contract") return contract(q, need("vertex").get<std::string>());
  if (name == "source_eliminate") return source_eliminate(q, need("vertex").get<std::string>());
  if (name == "heads") return attach_heads(q, need("n").get<std::size_t>());
  if (name == "higher_edge") return higher_edge(q, need("n").get<std::size_t>());
  if (name == "out_delay") return out_delay(q, drinen_from_json(need("vector")));
  if (name == "in_delay") return in_delay(q, drinen_from_json(need("vector")));
  throw PreconditionError("unknown move '" + name + "'");
}

ojson report_body(const Report& r, const std::string& kind) {
  const Check* bad = r.first_failure();
  ojson body;
  body["error"] = kind;
  body["message"] = "check " + bad->name + " fails" + (bad->detail.empty() ? "" : ": " + bad->detail);
  body["failed"] = bad->name;
  body["report"] = r.to_json();
  return body;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  Io io{in, out};
  CLI::App app{"Quiver moves, Leavitt path algebra arithmetic and equivalence certificates",
               "qlpa"};
  app.require_subcommand(1);

  std::string input, output, keep_arg, set_arg, name, params_arg, vertex, quiver_path, field_arg = "q";
  std::string other, q1_path, q2_path, witness_arg, moves_arg, cert_path;
  std::size_t n = 0;

  auto* collapse_cmd = app.add_subcommand("collapse", "Collapse a quiver onto a kept vertex set");
  collapse_cmd->add_option("input", input, "Quiver JSON")->required();
  collapse_cmd->add_option("--keep", keep_arg, "Comma-separated kept vertices")->required();
  collapse_cmd->add_option("-o,--output", output, "Write Q' here");

  auto* move_cmd = app.add_subcommand("move", "Apply one quiver move");
  move_cmd->add_option("name", name, "in_split, out_split, in_amalgamate, out_amalgamate, expand, "
                                     "contract, source_eliminate, heads, higher_edge, out_delay, in_delay")
      ->required();
  move_cmd->add_option("input", input, "Quiver JSON")->required();
  move_cmd->add_option("--params", params_arg, "Move parameters (inline JSON or file)");
  move_cmd->add_option("--vertex", vertex, "Vertex for expand/contract/source_eliminate");
  move_cmd->add_option("--n", n, "Order for heads/higher_edge");
  move_cmd->add_option("-o,--output", output, "Output file");

  auto* closure_cmd = app.add_subcommand("closure", "Hereditary saturated closure");
  closure_cmd->add_option("input", input, "Quiver JSON")->required();
  closure_cmd->add_option("--set", set_arg, "Comma-separated vertices")->required();

  auto* bridge_cmd = app.add_subcommand("bridge-paths", "Bridge paths B_v for every vertex");
  bridge_cmd->add_option("input", input, "Quiver JSON")->required();
  bridge_cmd->add_option("--keep", keep_arg, "Comma-separated kept vertices")->required();

  std::string expr_text;
  auto* eval_cmd = app.add_subcommand("eval", "Normal form of an expression in L_k(Q)");
  eval_cmd->add_option("expr", expr_text, "Expression")->required();
  eval_cmd->add_option("--quiver", quiver_path, "Quiver JSON")->required();
  eval_cmd->add_option("--field", field_arg, "q or fp:<prime>");

  auto* grade_cmd = app.add_subcommand("grade", "Solve the (1/n)Z grading of a collapse");
  grade_cmd->add_option("--collapse-of", input, "Quiver JSON")->required();
  grade_cmd->add_option("--keep", keep_arg, "Comma-separated kept vertices")->required();

  auto* esse_cmd = app.add_subcommand("esse-verify", "Check an elementary strong shift equivalence witness");
  esse_cmd->add_option("--q1", q1_path, "First quiver")->required();
  esse_cmd->add_option("--q2", q2_path, "Second quiver")->required();
  esse_cmd->add_option("--witness", witness_arg, "Witness JSON")->required();

  auto* se_cmd = app.add_subcommand("se-verify", "Check a shift equivalence witness");
  se_cmd->add_option("input", input, "JSON {a, b, c, d, lag}, inline or file")->required();

  auto* cert_cmd = app.add_subcommand("cert", "Build or check an equivalence certificate");
  cert_cmd->require_subcommand(1);
  auto* build_cmd = cert_cmd->add_subcommand("build", "Apply and verify a move chain");
  build_cmd->add_option("input", input, "Initial quiver")->required();
  build_cmd->add_option("--moves", moves_arg, "Move array (inline JSON or file)")->required();
  build_cmd->add_option("-o,--output", output, "Certificate file");
  auto* check_cmd = cert_cmd->add_subcommand("check", "Replay a certificate");
  check_cmd->add_option("certificate", cert_path, "Certificate JSON")->required();

  auto* dot_cmd = app.add_subcommand("export-dot", "Write Graphviz DOT");
  dot_cmd->add_option("input", input, "Quiver JSON")->required();
  dot_cmd->add_option("-o,--output", output, "Output file");

  auto* iso_cmd = app.add_subcommand("iso", "Decide quiver isomorphism");
  iso_cmd->add_option("first", input, "Quiver JSON")->required();
  iso_cmd->add_option("second", other, "Quiver JSON")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help("", CLI::AppFormatMode::All);
    return 2;
  }

  try {
    if (*collapse_cmd) {
      Quiver q = read_quiver(io, input);
      CollapseResult c = collapse(q, split_list(keep_arg));
      ojson result;
      result["n_max"] = c.n_max;
      result["origin"] = origin_json(q, c);
      if (output.empty()) {
        result["quiver"] = quiver_to_json(c.q_prime);
      } else {
        write_text(io, output, dump(quiver_to_json(c.q_prime)));
        result["quiver_hash"] = quiver_hash(c.q_prime);
      }
      if (output != "-") out << dump(result);
    } else if (*move_cmd) {
      Quiver q = read_quiver(io, input);
      nlohmann::json params = params_arg.empty() ? nlohmann::json::object() : json_arg(io, params_arg);
      if (!vertex.empty()) params["vertex"] = vertex;
      if (move_cmd->count("--n")) params["n"] = n;
      write_text(io, output, dump(quiver_to_json(apply_move(q, name, params))));
    } else if (*closure_cmd) {
      Quiver q = read_quiver(io, input);
      VertexSet x = split_list(set_arg);
      for (const auto& v : x) q.vertex_index(v);
      ClosureTrace t = hereditary_saturated_closure(q, x);
      ojson result, levels = ojson::array();
      for (const auto& level : t.levels) levels.push_back(vertex_set_to_json(level));
      result["closure"] = vertex_set_to_json(t.closure);
      result["levels"] = levels;
      result["full"] = t.closure == q.vertex_set();
      out << dump(result);
    } else if (*bridge_cmd) {
      Quiver q = read_quiver(io, input);
      ojson result = ojson::object();
      for (const auto& [v, paths] : bridge_paths(q, split_list(keep_arg)))
        result[v] = paths_json(q, paths);
      out << dump(result);
    } else if (*eval_cmd) {
      auto q = std::make_shared<const Quiver>(read_quiver(io, quiver_path));
      Element x = eval_expr(expr_text, q, parse_field(field_arg));
      out << render(normal_form(x)) << "\n";
    } else if (*grade_cmd) {
      Quiver q = read_quiver(io, input);
      CollapseResult c = collapse(q, split_list(keep_arg));
      Grading g;
      try {
        g = solve_collapse_grading(q, c);
      } catch (const GradingInfeasible& e) {
        throw Rejected{{{"error", e.kind()}, {"message", e.what()}, {"core", e.core()}}};
      }
      ojson result, degrees = ojson::object();
      result["n_max"] = c.n_max;
      result["grading"] = grading_to_json(g);
      for (const auto& [id, path] : c.edge_origin)
        degrees[id] = scalar_to_string(
            monomial_degree(q, g, {path, q.trivial_path(q.path_range(path))}));
      result["origin_degrees"] = degrees;
      out << dump(result);
    } else if (*esse_cmd) {
      Quiver q1 = read_quiver(io, q1_path), q2 = read_quiver(io, q2_path);
      Report r = verify_esse(q1, q2, esse_witness_from_json(json_arg(io, witness_arg)));
      if (!r.ok()) throw Rejected{report_body(r, "esse_rejected")};
      out << dump({{"valid", true}, {"report", r.to_json()}});
    } else if (*se_cmd) {
      nlohmann::json j = json_arg(io, input);
      for (const char* key : {"a", "b", "c", "d"})
        if (!j.contains(key)) throw PreconditionError(std::string("missing \"") + key + "\"");
      ShiftEquivalenceWitness w{matrix_from_json(j.at("c")), matrix_from_json(j.at("d")),
                                j.value("lag", 1u)};
      Report r = verify_shift_equivalence(matrix_from_json(j.at("a")), matrix_from_json(j.at("b")), w);
      if (!r.ok()) throw Rejected{report_body(r, "shift_equivalence_rejected")};
      out << dump({{"valid", true}, {"report", r.to_json()}});
    } else if (*build_cmd) {
      Quiver q = read_quiver(io, input);
      Certificate c = build_certificate(q, move_requests_from_json(json_arg(io, moves_arg)));
      write_text(io, output, dump(certificate_to_json(c)));
    } else if (*check_cmd) {
      CertificateCheck r = check_certificate(read_json(io, cert_path));
      if (!r.valid) {
        ojson body{{"error", "certificate_rejected"}, {"message", r.reason}};
        body["failed_step"] = r.failed_step ? ojson(*r.failed_step) : ojson(nullptr);
        throw Rejected{body};
      }
      out << dump({{"valid", true}});
    } else if (*dot_cmd) {
      write_text(io, output, to_dot(read_quiver(io, input)));
    } else if (*iso_cmd) {
      IsoResult r = is_isomorphic(read_quiver(io, input), read_quiver(io, other));
      ojson result;
      result["status"] = r.status == IsoStatus::Isomorphic      ? "isomorphic"
                         : r.status == IsoStatus::NotIsomorphic ? "not_isomorphic"
                                                                : "undecided";
      if (r.witness)
        result["witness"] = {{"vertex_map", r.witness->vertex_map},
                             {"edge_map", r.witness->edge_map}};
      if (!r.reason.empty()) result["reason"] = r.reason;
      out << dump(result);
    }
  } catch (const Rejected& r) {
    err << r.body.dump() << "\n";
    return 1;
  } catch (const Error& e) {
    err << ojson{{"error", e.kind()}, {"message", e.what()}}.dump() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << ojson{{"error", "invalid_json"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace qlpa::cli
