#include "wearprompt/error.hpp"

namespace wearprompt {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Format: return "format";
    case ErrorKind::Io: return "io";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::EmptyInput: return "empty_input";
    case ErrorKind::Dimension: return "dimension";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Invariant: return "invariant";
    case ErrorKind::Statistics: return "statistics";
    case ErrorKind::Config: return "config";
    }
    return "unknown";
}

}  // namespace wearprompt
