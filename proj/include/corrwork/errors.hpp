#pragma once

#include <stdexcept>
#include <string>

namespace corrwork {

/// A file could not be opened, read or written. The message names the path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace corrwork
