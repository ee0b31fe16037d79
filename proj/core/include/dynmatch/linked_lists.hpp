#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

#include "dynmatch/types.hpp"

namespace dynmatch {

// A family of doubly-linked lists sharing one universe of dense node ids.
// A node sits in at most one list of the family at a time; the caller tracks
// which list that is and passes it back for erase/pop. Link storage grows on
// demand, so node ids can be allocated freely (edge ids, slots, buckets...).
class LinkedLists {
 public:
  struct List {
    std::uint32_t head = kNone;
    std::uint32_t tail = kNone;
    std::uint32_t size = 0;

    bool empty() const { return size == 0; }
  };

  void ensure(std::uint32_t id) {
    if (id >= next_.size()) {
      next_.resize(id + 1, kNone);
      prev_.resize(id + 1, kNone);
    }
  }

  void push_back(List& l, std::uint32_t id) {
    ensure(id);
    prev_[id] = l.tail;
    next_[id] = kNone;
    if (l.tail == kNone) {
      l.head = id;
    } else {
      next_[l.tail] = id;
    }
    l.tail = id;
    ++l.size;
  }

  void push_front(List& l, std::uint32_t id) {
    ensure(id);
    next_[id] = l.head;
    prev_[id] = kNone;
    if (l.head == kNone) {
      l.tail = id;
    } else {
      prev_[l.head] = id;
    }
    l.head = id;
    ++l.size;
  }

  void erase(List& l, std::uint32_t id) {
    assert(l.size > 0);
    const std::uint32_t p = prev_[id];
    const std::uint32_t n = next_[id];
    if (p == kNone) {
      l.head = n;
    } else {
      next_[p] = n;
    }
    if (n == kNone) {
      l.tail = p;
    } else {
      prev_[n] = p;
    }
    prev_[id] = next_[id] = kNone;
    --l.size;
  }

  std::uint32_t pop_front(List& l) {
    assert(!l.empty());
    const std::uint32_t id = l.head;
    erase(l, id);
    return id;
  }

  std::uint32_t next(std::uint32_t id) const { return next_[id]; }
  std::uint32_t prev(std::uint32_t id) const { return prev_[id]; }

 private:
  std::vector<std::uint32_t> next_;
  std::vector<std::uint32_t> prev_;
};

}  // namespace dynmatch
