#include "jumplab_cli/jsonout.hpp"

#include <cmath>
#include <cstdio>

namespace jumplab::cli {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

void JsonWriter::separate() {
    if (after_key_) {
        after_key_ = false;
        return;
    }
    if (!stack_.empty()) {
        if (!first_.back()) out_ += ',';
        first_.back() = false;
        indent();
    }
}

void JsonWriter::indent() {
    out_ += '\n';
    out_.append(2 * stack_.size(), ' ');
}

JsonWriter& JsonWriter::begin_object() {
    separate();
    out_ += '{';
    stack_.push_back('o');
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    stack_.pop_back();
    first_.pop_back();
    indent();
    out_ += '}';
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    separate();
    out_ += '[';
    stack_.push_back('a');
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    stack_.pop_back();
    first_.pop_back();
    indent();
    out_ += ']';
    return *this;
}

JsonWriter& JsonWriter::key(const std::string& name) {
    separate();
    out_ += '"';
    out_ += json_escape(name);
    out_ += "\": ";
    after_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(double v) {
    separate();
    if (!std::isfinite(v)) {
        out_ += "null";
    } else {
        out_ += format_double(v);
    }
    return *this;
}

JsonWriter& JsonWriter::value(long v) {
    separate();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(unsigned long long v) {
    separate();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
    separate();
    out_ += '"';
    out_ += json_escape(v);
    out_ += '"';
    return *this;
}

JsonWriter& JsonWriter::value(bool v) {
    separate();
    out_ += v ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::null() {
    separate();
    out_ += "null";
    return *this;
}

}  // namespace jumplab::cli
