#include "normalsv/format.hpp"

#include <charconv>

namespace normalsv {

std::string format_number(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    return {buf, res.ptr};
}

}  // namespace normalsv
