#ifndef ORICOUNT_ERRORS_HPP
#define ORICOUNT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace oricount {

enum class ErrorKind {
    ParseError,
    DuplicateEdge,
    SelfLoop,
    IndexOutOfRange,
    BadParameter,
    SizeLimit,
    InvalidImbalance,
    Infeasible,
    Degenerate,
    NotConverged,
    ParityError,
    NotPositiveDefinite,
    Disconnected,
    SubgraphMismatch,
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::DuplicateEdge: return "DuplicateEdge";
        case ErrorKind::SelfLoop: return "SelfLoop";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::BadParameter: return "BadParameter";
        case ErrorKind::SizeLimit: return "SizeLimit";
        case ErrorKind::InvalidImbalance: return "InvalidImbalance";
        case ErrorKind::Infeasible: return "Infeasible";
        case ErrorKind::Degenerate: return "Degenerate";
        case ErrorKind::NotConverged: return "NotConverged";
        case ErrorKind::ParityError: return "ParityError";
        case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
        case ErrorKind::Disconnected: return "Disconnected";
        case ErrorKind::SubgraphMismatch: return "SubgraphMismatch";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + detail),
          kind_(kind), detail_(detail) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

} // namespace oricount

#endif
