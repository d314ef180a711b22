#include <iomanip>
#include <sstream>

#include "floorgraph/compose.hpp"
#include "floorgraph/error.hpp"
#include "floorgraph/serialization.hpp"
#include "floorgraph/vectorize.hpp"

namespace floorgraph {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

std::string path_data(const std::vector<Ring>& rings) {
  std::string d;
  for (const Ring& ring : rings) {
    for (std::size_t i = 0; i < ring.size(); ++i) {
      d += (i == 0 ? "M" : "L") + num(ring[i].x) + " " + num(ring[i].y) + " ";
    }
    d += "Z ";
  }
  if (!d.empty()) d.pop_back();
  return d;
}

std::string line(const Segment& s, const char* cls, const char* color, double width) {
  return "  <line class=\"" + std::string(cls) + "\" x1=\"" + num(s.a.x) + "\" y1=\"" + num(s.a.y) + "\" x2=\"" +
         num(s.b.x) + "\" y2=\"" + num(s.b.y) + "\" stroke=\"" + color + "\" stroke-width=\"" + num(width) +
         "\"/>\n";
}

std::string to_svg(const VectorFloorplan& vf) {
  const int res = vf.boundary.resolution();
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(res * 4) +
         "\" height=\"" + std::to_string(res * 4) + "\" viewBox=\"0 0 " + std::to_string(res) + " " +
         std::to_string(res) + "\">\n";
  out += "  <rect x=\"0\" y=\"0\" width=\"" + std::to_string(res) + "\" height=\"" + std::to_string(res) +
         "\" fill=\"#ffffff\"/>\n";
  for (const RoomRegion& r : vf.rooms) {
    out += "  <path class=\"room\" data-room-id=\"" + std::to_string(r.room_id) + "\" data-room-type=\"" +
           std::string(to_string(r.type)) + "\" fill=\"" + room_color(r.type) +
           "\" fill-rule=\"evenodd\" stroke=\"#606060\" stroke-width=\"0.5\" d=\"" + path_data(r.rings) + "\"/>\n";
  }
  out += "  <path class=\"boundary\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\" d=\"" +
         path_data({vf.boundary.vertices()}) + "\"/>\n";
  out += line(vf.boundary.door(), "front-door", "#d32f2f", 1.5);
  for (const Door& d : vf.doors) out += line(d.segment, "door", "#ffffff", 1.2);
  for (const Window& w : vf.windows) out += line(w.segment, "window", "#1e88e5", 1.2);
  out += "</svg>\n";
  return out;
}

}  // namespace

std::string export_floorplan(const VectorFloorplan& vf, ExportFormat format) {
  if (format == ExportFormat::Svg) return to_svg(vf);
  return to_json(vf).dump(2);
}

VectorFloorplan import_floorplan_json(const std::string& text) {
  const Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::Format, "floorplan: invalid JSON");
  return floorplan_from_json(j);
}

}  // namespace floorgraph
