#include "lassospec/json_out.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace lassospec::jout {

std::string format_double(double d) {
    if (!std::isfinite(d)) throw std::invalid_argument("non-finite number in JSON output");
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), d, std::chars_format::general, 17);
    if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
    return std::string(buf, ptr);
}

namespace {

void dump_string(const std::string& s, std::string& out) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

}  // namespace

std::string Value::dump() const {
    struct Visitor {
        std::string out;
        void visit(const Value& v) {
            if (std::holds_alternative<std::nullptr_t>(v.v_)) {
                out += "null";
            } else if (const bool* b = std::get_if<bool>(&v.v_)) {
                out += *b ? "true" : "false";
            } else if (const long long* i = std::get_if<long long>(&v.v_)) {
                out += std::to_string(*i);
            } else if (const double* d = std::get_if<double>(&v.v_)) {
                out += format_double(*d);
            } else if (const std::string* s = std::get_if<std::string>(&v.v_)) {
                dump_string(*s, out);
            } else if (const Array* a = std::get_if<Array>(&v.v_)) {
                out += '[';
                for (size_t i = 0; i < a->size(); ++i) {
                    if (i) out += ',';
                    visit((*a)[i]);
                }
                out += ']';
            } else {
                const Object& o = std::get<Object>(v.v_);
                out += '{';
                bool first = true;
                for (const auto& [k, val] : o) {
                    if (!first) out += ',';
                    first = false;
                    dump_string(k, out);
                    out += ':';
                    visit(val);
                }
                out += '}';
            }
        }
    } visitor;
    visitor.visit(*this);
    return std::move(visitor.out);
}

}  // namespace lassospec::jout
