#pragma once

#include <string>
#include <vector>

namespace jumplab::cli {

/// JSON emitter with numbers at 17 significant digits so doubles
/// round-trip bit-faithfully. Non-finite values are emitted as null.
class JsonWriter {
  public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(const std::string& name);

    JsonWriter& value(double v);
    JsonWriter& value(long v);
    JsonWriter& value(int v) { return value(static_cast<long>(v)); }
    JsonWriter& value(unsigned long long v);
    JsonWriter& value(const std::string& v);
    JsonWriter& value(const char* v) { return value(std::string(v)); }
    JsonWriter& value(bool v);
    JsonWriter& null();

    /// key/value in one call
    template <class T>
    JsonWriter& kv(const std::string& name, const T& v) {
        key(name);
        return value(v);
    }

    const std::string& str() const { return out_; }

  private:
    void separate();
    void indent();

    std::string out_;
    std::vector<char> stack_;   // 'o' or 'a'
    std::vector<bool> first_;
    bool after_key_ = false;
};

std::string format_double(double v);  // %.17g
std::string json_escape(const std::string& s);

}  // namespace jumplab::cli
