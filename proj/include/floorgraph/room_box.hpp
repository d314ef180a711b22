#pragma once

#include <vector>

#include "floorgraph/geometry.hpp"

namespace floorgraph {

/// Axis-aligned room box, center + size, in pixel units.
struct RoomBox {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;
  int room_id = 0;

  double left() const { return x - w / 2; }
  double right() const { return x + w / 2; }
  double top() const { return y - h / 2; }
  double bottom() const { return y + h / 2; }
  double area() const { return w * h; }
  Point center() const { return {x, y}; }
  Rect rect() const { return {left(), top(), right(), bottom()}; }

  static RoomBox from_edges(double left, double top, double right, double bottom, int room_id) {
    return {(left + right) / 2, (top + bottom) / 2, right - left, bottom - top, room_id};
  }
  static RoomBox from_rect(const Rect& r, int room_id) {
    return from_edges(r.x0, r.y0, r.x1, r.y1, room_id);
  }

  friend bool operator==(const RoomBox&, const RoomBox&) = default;
};

/// Looks a box up by room id; nullptr when absent.
const RoomBox* find_box(const std::vector<RoomBox>& boxes, int room_id);

}  // namespace floorgraph
