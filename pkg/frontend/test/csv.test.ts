import { describe, expect, it } from "vitest";

import { column, parseCsv } from "../src/csv.js";

describe("parseCsv", () => {
  it("parses a numeric table column-major", () => {
    const table = parseCsv("t_s,f\n0,0.5\n1e-4,0.9\n");
    expect(table.header).toEqual(["t_s", "f"]);
    expect(column(table, "f")).toEqual([0.5, 0.9]);
    expect(column(table, "t_s")).toEqual([0, 1e-4]);
  });

  it("rejects ragged rows", () => {
    expect(() => parseCsv("a,b\n1,2\n3\n")).toThrow(/row 2 has 1 cells/);
  });

  it("rejects non-numeric cells", () => {
    expect(() => parseCsv("a,b\n1,x\n")).toThrow(/not a number/);
  });

  it("rejects empty input and header-only files", () => {
    expect(() => parseCsv("")).toThrow(/empty CSV/);
    expect(() => parseCsv("a,b\n")).toThrow(/no data rows/);
  });

  it("names missing columns", () => {
    const table = parseCsv("a,b\n1,2\n");
    expect(() => column(table, "c", "file.csv")).toThrow(/file.csv: missing column c/);
  });
});
