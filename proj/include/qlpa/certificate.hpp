#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qlpa/quiver.hpp"
#include "qlpa/report.hpp"

namespace qlpa {

inline constexpr int kCertificateSchemaVersion = 1;

/// A move as requested by the user: name plus JSON parameters.
///
///   collapse        {"keep": [v...]}
///   uncollapse      {"target": quiver, "keep": [v...]}   target collapses onto the current quiver
///   isomorphism     {"target": quiver}
///   in_split, out_split, in_amalgamate, out_amalgamate   {"partition": {...}}
///   source_eliminate, expand, contract                   {"vertex": v}
///   heads           {"n": k}          current -> M_k(current)
///   higher_edge     {"n": k}          current -> current^[k]
///   esse            {"target": quiver, "witness": {...}}
///   out_delay, in_delay                                  {"vector": {...}}
struct MoveRequest {
  std::string move;
  nlohmann::json params;
};

struct MoveRecord {
  std::string move;
  nlohmann::ordered_json params;
  std::string result_hash;
  nlohmann::ordered_json payload;  // recomputed and compared by the checker
  std::string justification;
};

struct Certificate {
  Quiver initial;
  Quiver final_quiver;
  std::vector<MoveRecord> moves;
  std::string conclusion;
};

/// Applies and verifies each move; a move whose verification fails throws
/// PreconditionError naming the step.
Certificate build_certificate(const Quiver& initial, const std::vector<MoveRequest>& moves);

nlohmann::ordered_json certificate_to_json(const Certificate& c);

struct CertificateCheck {
  bool valid = false;
  /// Index of the first failing move; nullopt when the failure is in the
  /// header (schema, initial quiver, conclusion) or there is none.
  std::optional<std::size_t> failed_step;
  std::string reason;
};

/// Replays the certificate from its initial quiver using nothing but the
/// JSON document.
CertificateCheck check_certificate(const nlohmann::json& cert);

std::vector<MoveRequest> move_requests_from_json(const nlohmann::json& j);

}  // namespace qlpa
