#pragma once

#include "ropas/errors.hpp"

#include <bit>
#include <cassert>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace ropas {

// A subset of the t tasks of a dag as a canonical fixed-width bit vector:
// bit j set <=> task j in the set, task 0 in the least significant position.
// Bits at or beyond the universe size stay zero, so equality and hashing are
// bit-exact.  Instances are plain values; reading them concurrently is safe.
class task_set {
public:
  task_set() = default;

  explicit task_set(int universe_size) : size_(universe_size) {
    if (universe_size < 0) throw validation_error("task_set: negative universe size");
    words_.assign((size_t(universe_size) + 63) / 64, 0);
  }

  static task_set of(int universe_size, std::initializer_list<int> tasks) {
    task_set s(universe_size);
    for (int t : tasks) s.set(t);
    return s;
  }

  int universe() const { return size_; }

  int count() const {
    int c = 0;
    for (uint64_t w : words_) c += std::popcount(w);
    return c;
  }

  bool empty() const {
    for (uint64_t w : words_)
      if (w) return false;
    return true;
  }

  bool full() const { return count() == size_; }

  bool test(int task) const {
    assert(task >= 0 && task < size_);
    return (words_[size_t(task) >> 6] >> (task & 63)) & 1u;
  }

  void set(int task) {
    if (task < 0 || task >= size_) throw validation_error("task_set: task id out of range");
    words_[size_t(task) >> 6] |= uint64_t(1) << (task & 63);
  }

  void reset(int task) {
    if (task < 0 || task >= size_) throw validation_error("task_set: task id out of range");
    words_[size_t(task) >> 6] &= ~(uint64_t(1) << (task & 63));
  }

  // superset test: every member of `other` is in this set
  bool contains(const task_set& other) const {
    assert(size_ == other.size_);
    for (size_t i = 0; i < words_.size(); ++i)
      if (other.words_[i] & ~words_[i]) return false;
    return true;
  }

  bool intersects(const task_set& other) const {
    assert(size_ == other.size_);
    for (size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & other.words_[i]) return true;
    return false;
  }

  task_set& operator|=(const task_set& o) {
    assert(size_ == o.size_);
    for (size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

  task_set& operator&=(const task_set& o) {
    assert(size_ == o.size_);
    for (size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }

  // set difference
  task_set& operator-=(const task_set& o) {
    assert(size_ == o.size_);
    for (size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend task_set operator|(task_set a, const task_set& b) { return a |= b; }
  friend task_set operator&(task_set a, const task_set& b) { return a &= b; }
  friend task_set operator-(task_set a, const task_set& b) { return a -= b; }

  bool operator==(const task_set&) const = default;

  // three-way comparison of the underlying bit-vector value (task 0 least
  // significant); the deterministic (cardinality, value) node order uses it
  int compare_value(const task_set& o) const {
    assert(size_ == o.size_);
    for (size_t i = words_.size(); i-- > 0;)
      if (words_[i] != o.words_[i]) return words_[i] < o.words_[i] ? -1 : 1;
    return 0;
  }

  // smallest member, -1 when empty
  int find_first() const {
    for (size_t i = 0; i < words_.size(); ++i)
      if (words_[i]) return int(i * 64) + std::countr_zero(words_[i]);
    return -1;
  }

  // visits members in ascending task-id order
  template <class F>
  void for_each(F&& f) const {
    for (size_t i = 0; i < words_.size(); ++i) {
      uint64_t w = words_[i];
      while (w) {
        f(int(i * 64) + std::countr_zero(w));
        w &= w - 1;
      }
    }
  }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    out.reserve(size_t(count()));
    for_each([&](int t) { out.push_back(t); });
    return out;
  }

  // lowercase hex of the bit-vector value, least significant bit = task 0,
  // no leading zeros ("0" for the empty set); the node-key format
  std::string to_hex() const {
    static const char digits[] = "0123456789abcdef";
    std::string out;
    for (size_t i = words_.size(); i-- > 0;) {
      for (int shift = 60; shift >= 0; shift -= 4) {
        int nibble = int((words_[i] >> shift) & 0xf);
        if (out.empty() && nibble == 0) continue;
        out.push_back(digits[nibble]);
      }
    }
    return out.empty() ? "0" : out;
  }

  static task_set from_hex(const std::string& key, int universe_size) {
    if (key.empty()) throw validation_error("node key: empty hex string");
    task_set s(universe_size);
    for (size_t i = 0; i < key.size(); ++i) {
      char c = key[key.size() - 1 - i];
      int nibble;
      if (c >= '0' && c <= '9') nibble = c - '0';
      else if (c >= 'a' && c <= 'f') nibble = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') nibble = c - 'A' + 10;
      else throw validation_error(std::string("node key: bad hex character '") + c + "'");
      if (nibble == 0) continue;
      size_t bit = i * 4;
      for (int b = 0; b < 4; ++b) {
        if (!((nibble >> b) & 1)) continue;
        size_t task = bit + size_t(b);
        if (task >= size_t(universe_size))
          throw validation_error("node key '" + key + "': bit " + std::to_string(task) +
                                 " outside the task universe");
        s.set(int(task));
      }
    }
    return s;
  }

  // "0110" = {1,2}: string position j is task j (dot-label format)
  std::string to_bitstring() const {
    std::string out(size_t(size_), '0');
    for_each([&](int t) { out[size_t(t)] = '1'; });
    return out;
  }

  size_t hash() const {
    uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a over the words
    for (uint64_t w : words_) {
      h ^= w;
      h *= 0x100000001b3ull;
    }
    return size_t(h ^ uint64_t(size_));
  }

private:
  std::vector<uint64_t> words_;
  int size_ = 0;
};

struct task_set_hash {
  size_t operator()(const task_set& s) const { return s.hash(); }
};

} // namespace ropas
