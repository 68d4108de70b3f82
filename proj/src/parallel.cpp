#include "hgineq/parallel.hpp"

#include <cstdlib>
#include <string>

namespace hgineq {

int resolve_jobs(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("HGINEQ_JOBS")) {
        try {
            int v = std::stoi(env);
            if (v > 0) return v;
        } catch (...) {
        }
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

}  // namespace hgineq
