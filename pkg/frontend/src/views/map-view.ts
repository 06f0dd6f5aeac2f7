import type { MapModel, Marker } from "../markers.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export function renderMap(host: HTMLElement, model: MapModel): void {
  host.replaceChildren();
  if (model.markers.length === 0) {
    const p = document.createElement("p");
    p.className = "muted";
    p.textContent = "Nothing to plot yet.";
    host.appendChild(p);
    return;
  }
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${model.width} ${model.height}`);
  svg.setAttribute("class", "map");

  if (model.link) {
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(model.link.x1));
    line.setAttribute("y1", String(model.link.y1));
    line.setAttribute("x2", String(model.link.x2));
    line.setAttribute("y2", String(model.link.y2));
    line.setAttribute("class", "assignment-link");
    svg.appendChild(line);
    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String((model.link.x1 + model.link.x2) / 2 + 6));
    label.setAttribute("y", String((model.link.y1 + model.link.y2) / 2 - 6));
    label.setAttribute("class", "link-label");
    label.textContent = `${model.link.distanceKm.toFixed(1)} km`;
    svg.appendChild(label);
  }

  for (const marker of model.markers) {
    svg.appendChild(markerNode(marker));
  }
  host.appendChild(svg);
}

function markerNode(marker: Marker): SVGElement {
  const group = document.createElementNS(SVG_NS, "g");
  const classes: string[] = [marker.kind];
  if (marker.highlighted) classes.push("highlighted");
  if (marker.full) classes.push("full");
  group.setAttribute("class", classes.join(" "));

  const shape = document.createElementNS(SVG_NS, marker.kind === "facility" ? "rect" : "circle");
  if (marker.kind === "facility") {
    shape.setAttribute("x", String(marker.x - 7));
    shape.setAttribute("y", String(marker.y - 7));
    shape.setAttribute("width", "14");
    shape.setAttribute("height", "14");
  } else {
    shape.setAttribute("cx", String(marker.x));
    shape.setAttribute("cy", String(marker.y));
    shape.setAttribute("r", "5");
  }
  const popup = document.createElementNS(SVG_NS, "title");
  popup.textContent = marker.detail;
  shape.appendChild(popup);
  group.appendChild(shape);

  const text = document.createElementNS(SVG_NS, "text");
  text.setAttribute("x", String(marker.x + 10));
  text.setAttribute("y", String(marker.y + 4));
  text.textContent = marker.label;
  group.appendChild(text);
  return group;
}
