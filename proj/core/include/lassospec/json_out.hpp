#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace lassospec::jout {

/// Small JSON value tree for deterministic output: object keys are kept
/// sorted and doubles are printed with 17 significant digits via
/// std::to_chars, so identical inputs serialize to identical bytes.
class Value {
public:
    using Array = std::vector<Value>;
    using Object = std::map<std::string, Value>;

    Value() : v_(nullptr) {}
    Value(bool b) : v_(b) {}
    Value(int i) : v_(static_cast<long long>(i)) {}
    Value(long long i) : v_(i) {}
    Value(size_t i) : v_(static_cast<long long>(i)) {}
    Value(double d) : v_(d) {}
    Value(const char* s) : v_(std::string(s)) {}
    Value(std::string s) : v_(std::move(s)) {}

    static Value array() {
        Value v;
        v.v_ = Array{};
        return v;
    }
    static Value object() {
        Value v;
        v.v_ = Object{};
        return v;
    }

    Value& operator[](const std::string& key) { return std::get<Object>(v_)[key]; }
    void push_back(Value v) { std::get<Array>(v_).push_back(std::move(v)); }

    const Array& as_array() const { return std::get<Array>(v_); }
    const Object& as_object() const { return std::get<Object>(v_); }

    std::string dump() const;

private:
    std::variant<std::nullptr_t, bool, long long, double, std::string, Array, Object> v_;
};

/// Formats one double the way Value::dump does.
std::string format_double(double d);

}  // namespace lassospec::jout
