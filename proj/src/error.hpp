#pragma once

#include <stdexcept>
#include <string>

namespace majz {

enum class ErrorCode {
    InvalidArgument = 1,
    Parse = 2,
    Unsupported = 3,
    Io = 4,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    [[nodiscard]] ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace majz
