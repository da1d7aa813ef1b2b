#pragma once

// Just enough JSON to persist the pipeline artifacts: a streaming writer
// with comma and indent bookkeeping plus string escaping. Keys go out in
// call order, so a rerun with the same configuration produces byte-identical
// files. Nothing here reads JSON back.

#include <gmpxx.h>

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace ellreg {

class JsonWriter {
 public:
  JsonWriter& obj() { return open('{'); }
  JsonWriter& end_obj() { return close('}'); }
  JsonWriter& arr() { return open('['); }
  JsonWriter& end_arr() { return close(']'); }

  JsonWriter& key(const std::string& k) {
    sep();
    escaped(k);
    buf_ += ": ";
    after_key_ = true;
    return *this;
  }

  JsonWriter& str(const std::string& v) {
    sep();
    escaped(v);
    return *this;
  }
  JsonWriter& num(long v) {
    sep();
    buf_ += std::to_string(v);
    return *this;
  }
  JsonWriter& num(const mpz_class& v) {
    sep();
    buf_ += v.get_str();
    return *this;
  }
  JsonWriter& boolean(bool v) {
    sep();
    buf_ += v ? "true" : "false";
    return *this;
  }
  JsonWriter& null() {
    sep();
    buf_ += "null";
    return *this;
  }

  std::string take() {
    if (!open_.empty()) throw std::logic_error("json: unclosed container");
    buf_ += '\n';
    return std::move(buf_);
  }

 private:
  JsonWriter& open(char c) {
    sep();
    buf_ += c;
    open_.push_back(false);
    return *this;
  }
  JsonWriter& close(char c) {
    if (open_.empty()) throw std::logic_error("json: stray close");
    bool any = open_.back();
    open_.pop_back();
    if (any) {
      buf_ += '\n';
      indent();
    }
    buf_ += c;
    return *this;
  }
  // comma / newline before a new element; a value right after its key stays
  // on the key's line
  void sep() {
    if (after_key_) {
      after_key_ = false;
      return;
    }
    if (open_.empty()) return;
    if (open_.back()) buf_ += ',';
    open_.back() = true;
    buf_ += '\n';
    indent();
  }
  void indent() { buf_.append(2 * open_.size(), ' '); }
  void escaped(const std::string& s) {
    buf_ += '"';
    for (char ch : s) {
      switch (ch) {
        case '"': buf_ += "\\\""; break;
        case '\\': buf_ += "\\\\"; break;
        case '\n': buf_ += "\\n"; break;
        case '\t': buf_ += "\\t"; break;
        case '\r': buf_ += "\\r"; break;
        default:
          if (static_cast<unsigned char>(ch) < 0x20) {
            char u[8];
            std::snprintf(u, sizeof u, "\\u%04x", static_cast<unsigned char>(ch));
            buf_ += u;
          } else {
            buf_ += ch;
          }
      }
    }
    buf_ += '"';
  }

  std::string buf_;
  std::vector<bool> open_;  // per level: element written yet?
  bool after_key_ = false;
};

inline void write_file(const std::string& path, const std::string& text) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  size_t n = std::fwrite(text.data(), 1, text.size(), f);
  std::fclose(f);
  if (n != text.size()) throw std::runtime_error("short write: " + path);
}

}  // namespace ellreg
