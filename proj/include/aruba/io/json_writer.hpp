/*
 * Copyright 2026 The Aruba Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aruba/io/float_format.hpp"

namespace aruba {

/// Streaming JSON emitter for the golden-stable output files: the caller
/// controls key order, floats are rendered with format_sig, indentation is
/// two spaces and line endings are LF. nlohmann/json stays on the parsing
/// side; this writer exists so the emitted bytes are fully pinned down.
class JsonWriter {
 public:
  void begin_object() {
    prefix();
    out_ += '{';
    stack_.push_back(State{true, true});
  }

  void end_object() {
    const bool empty = stack_.back().first_item;
    stack_.pop_back();
    if (!empty) {
      out_ += '\n';
      indent();
    }
    out_ += '}';
  }

  void begin_array() {
    prefix();
    out_ += '[';
    stack_.push_back(State{false, true});
  }

  void end_array() {
    const bool empty = stack_.back().first_item;
    stack_.pop_back();
    if (!empty) {
      out_ += '\n';
      indent();
    }
    out_ += ']';
  }

  void key(const std::string& name) {
    item_separator();
    indent();
    append_string(name);
    out_ += ": ";
    pending_key_ = true;
  }

  void value(const std::string& v) {
    prefix();
    append_string(v);
  }
  void value(const char* v) { value(std::string(v)); }
  void value(double v) {
    prefix();
    out_ += format_sig(v);
  }
  void value(std::int64_t v) {
    prefix();
    out_ += std::to_string(v);
  }
  void value(int v) { value(static_cast<std::int64_t>(v)); }
  void value(bool v) {
    prefix();
    out_ += v ? "true" : "false";
  }

  /// Finished document text, newline-terminated.
  std::string str() const { return out_ + "\n"; }

 private:
  struct State {
    bool is_object = false;
    bool first_item = true;
  };

  void item_separator() {
    if (stack_.empty()) return;
    if (stack_.back().first_item) {
      stack_.back().first_item = false;
    } else {
      out_ += ',';
    }
    out_ += '\n';
  }

  void indent() {
    out_.append(2 * stack_.size(), ' ');
  }

  // Array elements and root values need their own separator/indent; values
  // following a key are already positioned.
  void prefix() {
    if (pending_key_) {
      pending_key_ = false;
      return;
    }
    if (!stack_.empty() && !stack_.back().is_object) {
      item_separator();
      indent();
    }
  }

  void append_string(const std::string& s) {
    out_ += '"';
    for (char c : s) {
      switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\r': out_ += "\\r"; break;
        case '\t': out_ += "\\t"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x",
                          static_cast<unsigned>(static_cast<unsigned char>(c)));
            out_ += buf;
          } else {
            out_ += c;
          }
      }
    }
    out_ += '"';
  }

  std::string out_;
  std::vector<State> stack_;
  bool pending_key_ = false;
};

}  // namespace aruba
