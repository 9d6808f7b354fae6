#pragma once

#include <fmt/format.h>

#include <cmath>
#include <string>
#include <string_view>

namespace csea
{

/// 17 significant digits; non-finite values become null.
inline std::string format_real(double x)
{
    if (!std::isfinite(x))
        return "null";
    return fmt::format("{:.17g}", x);
}

/// JSON string literal with the mandatory escapes.
inline std::string quote_json(std::string_view s)
{
    std::string out = "\"";
    for (char c : s)
    {
        switch (c)
        {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20)
                out += fmt::format("\\u{:04x}", static_cast<unsigned>(static_cast<unsigned char>(c)));
            else
                out.push_back(c);
        }
    }
    out += '"';
    return out;
}

}  // namespace csea
