/** Offline coordinate picker: a clickable equirectangular plane with a
 * latitude/longitude grid. No tile service involved. */

export interface LatLong {
  lat: number;
  long: number;
}

export function pixelToLatLong(x: number, y: number, width: number, height: number): LatLong {
  const long = (x / width) * 360 - 180;
  const lat = 90 - (y / height) * 180;
  return { lat: clamp(lat, -90, 90), long: clamp(long, -180, 180) };
}

export function latLongToPixel(lat: number, long: number, width: number, height: number): { x: number; y: number } {
  return {
    x: ((long + 180) / 360) * width,
    y: ((90 - lat) / 180) * height,
  };
}

function clamp(value: number, lo: number, hi: number): number {
  return Math.min(hi, Math.max(lo, value));
}

/** Grid lines every `step` degrees, as fractions of the plane size. */
export function gridLines(step = 30): { vertical: number[]; horizontal: number[] } {
  const vertical: number[] = [];
  for (let long = -180; long <= 180; long += step) {
    vertical.push((long + 180) / 360);
  }
  const horizontal: number[] = [];
  for (let lat = -90; lat <= 90; lat += step) {
    horizontal.push((90 - lat) / 180);
  }
  return { vertical, horizontal };
}

export class MapPicker {
  readonly element: HTMLElement;
  private marker: HTMLElement;
  private current: LatLong | null = null;

  constructor(private onPick: (position: LatLong) => void) {
    this.element = document.createElement("div");
    this.element.className = "map-picker";
    this.element.title = "Click to set the sensor location";

    const { vertical, horizontal } = gridLines();
    for (const fraction of vertical) {
      const line = document.createElement("div");
      line.className = "map-grid map-grid-v";
      line.style.left = `${fraction * 100}%`;
      this.element.appendChild(line);
    }
    for (const fraction of horizontal) {
      const line = document.createElement("div");
      line.className = "map-grid map-grid-h";
      line.style.top = `${fraction * 100}%`;
      if (fraction === 0.5) line.classList.add("map-equator");
      this.element.appendChild(line);
    }

    this.marker = document.createElement("div");
    this.marker.className = "map-marker";
    this.marker.hidden = true;
    this.element.appendChild(this.marker);

    this.element.addEventListener("click", (event) => {
      const rect = this.element.getBoundingClientRect();
      const position = pixelToLatLong(
        event.clientX - rect.left,
        event.clientY - rect.top,
        rect.width,
        rect.height,
      );
      this.setMarker(position);
      this.onPick(position);
    });
  }

  /** Move the marker (e.g. when the numeric inputs change). */
  setMarker(position: LatLong | null): void {
    this.current = position;
    if (position === null) {
      this.marker.hidden = true;
      return;
    }
    const { x, y } = latLongToPixel(position.lat, position.long, 100, 100);
    this.marker.style.left = `${x}%`;
    this.marker.style.top = `${y}%`;
    this.marker.hidden = false;
  }

  get position(): LatLong | null {
    return this.current;
  }
}
