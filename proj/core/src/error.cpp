#include "relaxdiff/error.hpp"

namespace relaxdiff {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Dimension: return "dimension";
        case ErrorKind::Parameter: return "parameter";
        case ErrorKind::Range: return "range";
        case ErrorKind::Degenerate: return "degenerate direction";
        case ErrorKind::Symmetry: return "symmetry";
        case ErrorKind::Solver: return "solver";
        case ErrorKind::Numerical: return "numerical";
        case ErrorKind::Invariant: return "invariant";
        case ErrorKind::Fit: return "fit";
        case ErrorKind::IoMissing: return "missing file";
        case ErrorKind::IoFormat: return "malformed file";
        case ErrorKind::IoTruncated: return "truncated file";
        case ErrorKind::IoWrite: return "write failure";
    }
    return "unknown";
}

}  // namespace relaxdiff
