#pragma once

#include <string>

namespace primus {

enum class Status { Primitive, NotPrimitive, Unknown };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::Primitive: return "Primitive";
    case Status::NotPrimitive: return "NotPrimitive";
    case Status::Unknown: return "Unknown";
  }
  return {};
}

}  // namespace primus
