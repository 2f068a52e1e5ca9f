#include "galstat/parallel.hpp"

#include <cstdlib>
#include <string>

namespace galstat {

unsigned default_jobs() {
    if (const char* env = std::getenv("GALSTAT_JOBS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace galstat
