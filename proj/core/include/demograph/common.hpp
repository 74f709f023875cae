#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace demograph {

// Malformed or contract-violating input data. Mapped to CLI exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// A numeric routine failed to converge or produced an invalid value.
// Mapped to CLI exit code 3.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

std::uint64_t fnv1a64(std::string_view bytes,
                      std::uint64_t seed = 0xcbf29ce484222325ull);

// Reads a whole file into memory. Throws DataError if it cannot be opened.
std::string read_text_file(const std::string& path);

// Runs fn(begin, end) over fixed-size chunks of [0, n). Chunk boundaries
// depend only on (n, chunk), never on the worker count, so per-chunk outputs
// combined in chunk order are bit-identical no matter how many threads ran.
void parallel_chunks(std::size_t n, std::size_t chunk,
                     const std::function<void(std::size_t, std::size_t)>& fn,
                     unsigned max_threads = 0);

// Row-disjoint parallel loop: fn(i) for i in [0, n).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace demograph
