// Triangular board geometry: position ids are row-major (row r holds
// columns 1..r), matching the numbering the service and the printed
// boards use.  Pure functions, no DOM.

export interface Point {
  x: number;
  y: number;
}

export function triangularNumber(n: number): number {
  return (n * (n + 1)) / 2;
}

export function rowColOf(id: number): { row: number; col: number } {
  if (!Number.isInteger(id) || id < 1) {
    throw new RangeError(`position ids are naturals, got ${id}`);
  }
  let row = 1;
  while (triangularNumber(row) < id) {
    row += 1;
  }
  return { row, col: id - triangularNumber(row - 1) };
}

export function idOf(row: number, col: number): number {
  if (col < 1 || col > row) {
    throw new RangeError(`column ${col} not in row ${row}`);
  }
  return triangularNumber(row - 1) + col;
}

export interface BoardGeometry {
  width: number;
  height: number;
  spacing: number;
  positions: Map<number, Point>;
  outline: Point[];
}

/** Screen coordinates for every position of an m-level board. */
export function boardGeometry(m: number, spacing = 64, margin = 40): BoardGeometry {
  const rowHeight = (spacing * Math.sqrt(3)) / 2;
  const width = spacing * Math.max(m - 1, 0) + 2 * margin;
  const height = rowHeight * Math.max(m - 1, 0) + 2 * margin;
  const centerX = width / 2;
  const positions = new Map<number, Point>();
  for (let row = 1; row <= m; row += 1) {
    for (let col = 1; col <= row; col += 1) {
      positions.set(idOf(row, col), {
        x: centerX + spacing * (col - 1 - (row - 1) / 2),
        y: margin + rowHeight * (row - 1),
      });
    }
  }
  const pad = spacing * 0.75;
  const top = positions.get(1) ?? { x: centerX, y: margin };
  const outline: Point[] = m === 0 ? [] : [
    { x: top.x, y: top.y - pad },
    { x: centerX - (spacing * (m - 1)) / 2 - pad, y: margin + rowHeight * (m - 1) + pad * 0.6 },
    { x: centerX + (spacing * (m - 1)) / 2 + pad, y: margin + rowHeight * (m - 1) + pad * 0.6 },
  ];
  return { width, height, spacing, positions, outline };
}

/** Centroid of a cell's positions; anchor for k>1 cell overlays. */
export function cellCentroid(cell: number[], geometry: BoardGeometry): Point {
  let x = 0;
  let y = 0;
  for (const id of cell) {
    const point = geometry.positions.get(id);
    if (!point) {
      throw new RangeError(`position ${id} not on this board`);
    }
    x += point.x;
    y += point.y;
  }
  return { x: x / cell.length, y: y / cell.length };
}

/** Direction arrow anchors: 1 above the apex, 2 and 3 at the lower corners. */
export function directionAnchors(geometry: BoardGeometry): Record<1 | 2 | 3, Point> {
  const [top, left, right] = geometry.outline;
  return {
    1: { x: top.x, y: top.y - 14 },
    2: { x: left.x - 6, y: left.y + 14 },
    3: { x: right.x + 6, y: right.y + 14 },
  };
}
