#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "epochbc/types.hpp"

namespace epochbc {

/// A (tau, c) pair: sample count plus per-vertex path-occurrence counts — the
/// unit of aggregation. Stored as one flat word array (word 0 = tau) so a
/// frame can be handed to a reduction as a single contiguous buffer.
class StateFrame {
public:
    StateFrame() = default;
    explicit StateFrame(Vertex num_vertices) : words_(num_vertices + 1, 0) {}

    Vertex num_vertices() const { return words_.empty() ? 0 : words_.size() - 1; }

    std::uint64_t tau() const { return words_[0]; }
    std::uint64_t count(Vertex v) const { return words_[v + 1]; }

    void record_sample_start() { ++words_[0]; }
    void record_occurrence(Vertex v) { ++words_[v + 1]; }

    void clear() { std::fill(words_.begin(), words_.end(), std::uint64_t{0}); }

    void add(const StateFrame &other) {
        require(other.words_.size() == words_.size(), "StateFrame::add: size mismatch");
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] += other.words_[i];
    }

    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> words() { return words_; }

    bool operator==(const StateFrame &other) const = default;

private:
    std::vector<std::uint64_t> words_;
};

} // namespace epochbc
