/** Minimal fetch-based server-sent-events reader. Works in the browser and
 * under node (both expose fetch + ReadableStream), unlike EventSource. */

export interface SseMessage {
  id: string | null;
  data: string;
}

export async function* readSse(
  url: string,
  init: RequestInit = {},
): AsyncGenerator<SseMessage> {
  const response = await fetch(url, {
    ...init,
    headers: { Accept: "text/event-stream", ...(init.headers ?? {}) },
  });
  if (!response.ok || !response.body) {
    throw new Error(`event stream failed: HTTP ${response.status}`);
  }

  const reader = response.body.getReader();
  const decoder = new TextDecoder();
  let buffer = "";
  let id: string | null = null;
  let data: string[] = [];

  try {
    for (;;) {
      const { value, done } = await reader.read();
      if (done) break;
      buffer += decoder.decode(value, { stream: true });

      let newline;
      while ((newline = buffer.indexOf("\n")) >= 0) {
        const line = buffer.slice(0, newline).replace(/\r$/, "");
        buffer = buffer.slice(newline + 1);

        if (line === "") {
          if (data.length > 0) {
            yield { id, data: data.join("\n") };
          }
          id = null;
          data = [];
        } else if (line.startsWith("id:")) {
          id = line.slice(3).trim();
        } else if (line.startsWith("data:")) {
          data.push(line.slice(5).trimStart());
        }
        // comment lines (":" prefix) and unknown fields are ignored
      }
    }
  } finally {
    reader.releaseLock();
  }
}
