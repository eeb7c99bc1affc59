/** Device capture: webcam frames at a capped rate and microphone chunks.
 * Sampling intelligence stays server-side; the console just pushes. */

export const MAX_FRAME_RATE_FPS = 2;

export interface CaptureHandles {
  stream: MediaStream | null;
  stop: () => void;
}

export async function requestCamera(): Promise<MediaStream> {
  return navigator.mediaDevices.getUserMedia({
    video: { width: { ideal: 960 }, height: { ideal: 540 } },
  });
}

export async function requestMicrophone(): Promise<MediaStream> {
  return navigator.mediaDevices.getUserMedia({
    audio: { channelCount: 1, sampleRate: 16000 },
  });
}

/** Draw the video to a canvas and push a JPEG at most every 1/MAX_FRAME_RATE
 * seconds. Returns a stop function. */
export function startFramePusher(
  stream: MediaStream,
  push: (jpeg: Blob) => Promise<void>,
  fps: number = MAX_FRAME_RATE_FPS,
): () => void {
  const video = document.createElement("video");
  video.srcObject = stream;
  video.muted = true;
  void video.play();

  const canvas = document.createElement("canvas");
  const intervalMs = Math.max(1000 / Math.min(fps, MAX_FRAME_RATE_FPS), 500);
  let busy = false;

  const timer = setInterval(() => {
    if (busy || video.videoWidth === 0) return;
    canvas.width = video.videoWidth;
    canvas.height = video.videoHeight;
    const ctx = canvas.getContext("2d");
    if (!ctx) return;
    ctx.drawImage(video, 0, 0);
    busy = true;
    canvas.toBlob(
      (blob) => {
        if (blob) {
          void push(blob).finally(() => {
            busy = false;
          });
        } else {
          busy = false;
        }
      },
      "image/jpeg",
      0.8,
    );
  }, intervalMs);

  return () => {
    clearInterval(timer);
    for (const track of stream.getTracks()) track.stop();
  };
}

/** Record microphone audio and deliver one chunk per utterance-sized blob.
 * MediaRecorder's container format is provider business; the mock service
 * treats audio bytes as opaque. */
export function startAudioPusher(
  stream: MediaStream,
  push: (chunk: Uint8Array, utteranceEnd: boolean) => Promise<void>,
  chunkMs = 2500,
): () => void {
  const recorder = new MediaRecorder(stream);
  recorder.ondataavailable = (event) => {
    if (event.data.size === 0) return;
    void event.data.arrayBuffer().then((buf) => push(new Uint8Array(buf), true));
  };
  recorder.start(chunkMs);
  return () => {
    recorder.stop();
    for (const track of stream.getTracks()) track.stop();
  };
}
