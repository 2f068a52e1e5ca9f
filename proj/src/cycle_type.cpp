#include "galstat/cycle_type.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <numeric>

#include "galstat/error.hpp"

namespace galstat {

CycleType::CycleType(std::vector<int> parts) : parts_(std::move(parts)) {
    for (const int x : parts_)
        if (x <= 0) throw Error(ErrorCode::InvalidArgument, "partition parts must be positive");
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

CycleType CycleType::parse(std::string_view text) {
    std::vector<int> parts;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('-', pos);
        if (end == std::string_view::npos) end = text.size();
        int v = 0;
        const auto piece = text.substr(pos, end - pos);
        const auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
        if (ec != std::errc{} || ptr != piece.data() + piece.size() || v <= 0)
            throw Error(ErrorCode::ParseError, "bad cycle type '" + std::string(text) + "'");
        parts.push_back(v);
        pos = end + 1;
    }
    return CycleType(std::move(parts));
}

CycleType CycleType::transposition(int n) {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "a transposition needs at least two points");
    std::vector<int> parts(static_cast<std::size_t>(n - 1), 1);
    parts[0] = 2;
    return CycleType(std::move(parts));
}

int CycleType::degree() const noexcept { return std::accumulate(parts_.begin(), parts_.end(), 0); }

int CycleType::sign() const noexcept {
    int even_parts = 0;
    for (const int x : parts_)
        if (x % 2 == 0) ++even_parts;
    return even_parts % 2 == 0 ? 1 : -1;
}

std::string CycleType::str() const {
    std::string s;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += '-';
        s += std::to_string(parts_[i]);
    }
    return s;
}

}  // namespace galstat
