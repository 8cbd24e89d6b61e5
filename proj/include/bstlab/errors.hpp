#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bstlab {

/// Thrown when a bounded search (gadget enumeration, exact optimum,
/// regression search) exceeds its configured node or time budget.
class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(const std::string& what, std::uint64_t nodes = 0)
        : std::runtime_error(what), nodes_(nodes) {}

    std::uint64_t nodes() const { return nodes_; }

private:
    std::uint64_t nodes_;
};

} // namespace bstlab
