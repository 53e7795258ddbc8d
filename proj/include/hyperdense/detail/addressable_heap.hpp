#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hyperdense::detail {

// Binary min-heap over items 0..n-1 with key updates in both directions.
// Equal keys compare by item id, so pop order is deterministic.
class AddressableMinHeap {
 public:
  explicit AddressableMinHeap(std::span<const double> keys)
      : key_(keys.begin(), keys.end()),
        heap_(keys.size()),
        pos_(keys.size()) {
    for (std::size_t i = 0; i < heap_.size(); ++i) heap_[i] = static_cast<int>(i);
    for (std::size_t i = heap_.size(); i-- > 0;) sift_down(i);
  }

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }

  int pop() {
    int top = heap_[0];
    swap_items(0, heap_.size() - 1);
    heap_.pop_back();
    pos_[static_cast<std::size_t>(top)] = -1;
    if (!heap_.empty()) sift_down(0);
    return top;
  }

  void update(int item, double key) {
    double old = key_[static_cast<std::size_t>(item)];
    key_[static_cast<std::size_t>(item)] = key;
    int p = pos_[static_cast<std::size_t>(item)];
    if (p < 0) return;  // already removed
    if (key < old) {
      sift_up(static_cast<std::size_t>(p));
    } else if (key > old) {
      sift_down(static_cast<std::size_t>(p));
    }
  }

  double key(int item) const { return key_[static_cast<std::size_t>(item)]; }

 private:
  bool less(int a, int b) const {
    double ka = key_[static_cast<std::size_t>(a)];
    double kb = key_[static_cast<std::size_t>(b)];
    return ka < kb || (ka == kb && a < b);
  }

  void swap_items(std::size_t i, std::size_t j) {
    std::swap(heap_[i], heap_[j]);
    pos_[static_cast<std::size_t>(heap_[i])] = static_cast<int>(i);
    pos_[static_cast<std::size_t>(heap_[j])] = static_cast<int>(j);
  }

  void sift_up(std::size_t i) {
    while (i > 0) {
      std::size_t parent = (i - 1) / 2;
      if (!less(heap_[i], heap_[parent])) break;
      swap_items(i, parent);
      i = parent;
    }
  }

  void sift_down(std::size_t i) {
    while (true) {
      std::size_t left = 2 * i + 1;
      if (left >= heap_.size()) break;
      std::size_t child = left;
      if (left + 1 < heap_.size() && less(heap_[left + 1], heap_[left])) child = left + 1;
      if (!less(heap_[child], heap_[i])) break;
      swap_items(i, child);
      i = child;
    }
  }

  std::vector<double> key_;
  std::vector<int> heap_;  // position -> item
  std::vector<int> pos_;   // item -> position, -1 once popped
};

}  // namespace hyperdense::detail
