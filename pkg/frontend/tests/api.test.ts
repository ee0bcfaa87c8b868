import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiError, ServiceClient } from "../src/api.js";

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("ServiceClient", () => {
  it("uploads CSV to the series endpoint", async () => {
    const fetchMock = vi.fn().mockResolvedValue(
      jsonResponse({
        sessionId: "abc",
        pointCount: 3,
        granularity: "year",
        defaultSpec: {
          plotWidth: 640,
          plotHeight: 480,
          xRange: ["2000-01-01", "2002-01-01"],
          yRange: [0, 2],
        },
      }),
    );
    vi.stubGlobal("fetch", fetchMock);

    const client = new ServiceClient("http://backend:9000/");
    const info = await client.uploadSeries("date,value\n2000-01-01,1\n");

    expect(info.sessionId).toBe("abc");
    expect(fetchMock).toHaveBeenCalledTimes(1);
    const [url, init] = fetchMock.mock.calls[0]!;
    expect(url).toBe("http://backend:9000/api/series");
    expect(init.method).toBe("POST");
    expect(init.headers["Content-Type"]).toBe("text/csv");
    expect(init.body).toBe("date,value\n2000-01-01,1\n");
  });

  it("posts caption and spec to the check endpoint", async () => {
    const result = { features: [], references: [], diagnostics: [] };
    const fetchMock = vi.fn().mockResolvedValue(jsonResponse(result));
    vi.stubGlobal("fetch", fetchMock);

    const spec = {
      plotWidth: 800,
      plotHeight: 500,
      xRange: ["1890-01-01", "2006-01-01"] as [string, string],
      yRange: [50, 200] as [number, number],
    };
    const client = new ServiceClient();
    const got = await client.checkCaption("s1", "Prices rose.", spec);

    expect(got).toEqual(result);
    const [url, init] = fetchMock.mock.calls[0]!;
    expect(url).toBe("/api/sessions/s1/check");
    expect(init.method).toBe("POST");
    expect(JSON.parse(init.body)).toEqual({ caption: "Prices rose.", spec });
  });

  it("omits the spec field when none is given", async () => {
    const fetchMock = vi
      .fn()
      .mockResolvedValue(jsonResponse({ features: [], references: [], diagnostics: [] }));
    vi.stubGlobal("fetch", fetchMock);

    await new ServiceClient().checkCaption("s1", "hello");
    const [, init] = fetchMock.mock.calls[0]!;
    expect(JSON.parse(init.body)).toEqual({ caption: "hello" });
  });

  it("fetches the feature list", async () => {
    const features = [
      { kind: "point", rank: 1, persistence: 0.25, index: 4, extremeKind: "localMax" },
    ];
    const fetchMock = vi.fn().mockResolvedValue(jsonResponse({ features }));
    vi.stubGlobal("fetch", fetchMock);

    const got = await new ServiceClient().getFeatures("s2");
    expect(got).toEqual(features);
    expect(fetchMock.mock.calls[0]![0]).toBe("/api/sessions/s2/features");
  });

  it("surfaces service error messages as ApiError", async () => {
    const fetchMock = vi
      .fn()
      .mockResolvedValue(jsonResponse({ error: "unknown session" }, 404));
    vi.stubGlobal("fetch", fetchMock);

    const err = await new ServiceClient()
      .getFeatures("nope")
      .then(() => null)
      .catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).status).toBe(404);
    expect((err as ApiError).message).toBe("unknown session");
  });

  it("falls back to the status line for non-JSON error bodies", async () => {
    const fetchMock = vi.fn().mockResolvedValue(
      new Response("<html>oops</html>", { status: 502, statusText: "Bad Gateway" }),
    );
    vi.stubGlobal("fetch", fetchMock);

    const err = await new ServiceClient()
      .uploadSeries("x")
      .then(() => null)
      .catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).message).toBe("502 Bad Gateway");
  });
});
