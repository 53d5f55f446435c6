import { describe, expect, it } from "vitest";

import {
  boardGeometry,
  cellCentroid,
  directionAnchors,
  idOf,
  rowColOf,
  triangularNumber,
} from "../src/layout.js";

describe("triangular numbering", () => {
  it("computes triangular numbers", () => {
    expect([0, 1, 2, 3, 4, 5].map(triangularNumber)).toEqual([0, 1, 3, 6, 10, 15]);
  });

  it("round-trips id <-> (row, col) over the first 15 positions", () => {
    const expected: Array<[number, number]> = [];
    for (let row = 1; row <= 5; row += 1) {
      for (let col = 1; col <= row; col += 1) expected.push([row, col]);
    }
    for (let id = 1; id <= 15; id += 1) {
      const { row, col } = rowColOf(id);
      expect([row, col]).toEqual(expected[id - 1]);
      expect(idOf(row, col)).toBe(id);
    }
  });

  it("rejects nonsense coordinates", () => {
    expect(() => rowColOf(0)).toThrow(RangeError);
    expect(() => idOf(2, 3)).toThrow(RangeError);
  });
});

describe("board geometry", () => {
  it("places one point per position, rows top-down", () => {
    const geometry = boardGeometry(5);
    expect(geometry.positions.size).toBe(15);
    // row-major numbering: y grows with the row, x grows with the column
    expect(geometry.positions.get(1)!.y).toBeLessThan(geometry.positions.get(2)!.y);
    expect(geometry.positions.get(4)!.x).toBeLessThan(geometry.positions.get(5)!.x);
    expect(geometry.positions.get(4)!.y).toBeCloseTo(geometry.positions.get(6)!.y);
  });

  it("centers each row", () => {
    const geometry = boardGeometry(3);
    const apex = geometry.positions.get(1)!;
    const row3 = [4, 5, 6].map((id) => geometry.positions.get(id)!);
    expect((row3[0].x + row3[2].x) / 2).toBeCloseTo(apex.x);
    expect(row3[1].x).toBeCloseTo(apex.x);
  });

  it("computes centroids of k=2 cells", () => {
    const geometry = boardGeometry(3);
    const centroid = cellCentroid([1, 4, 6], geometry);
    expect(centroid.x).toBeCloseTo(geometry.positions.get(1)!.x);
    expect(() => cellCentroid([99], geometry)).toThrow(RangeError);
  });

  it("anchors the three direction badges around the outline", () => {
    const geometry = boardGeometry(3);
    const anchors = directionAnchors(geometry);
    expect(anchors[1].y).toBeLessThan(anchors[2].y);
    expect(anchors[2].x).toBeLessThan(anchors[3].x);
  });
});
