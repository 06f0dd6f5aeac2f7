// Polling helper: fire immediately, then on an interval; errors go to the
// handler so one failed poll never kills the loop.

export function startPolling(
  task: () => Promise<void>,
  intervalMs: number,
  onError: (err: unknown) => void,
): () => void {
  let stopped = false;
  const run = () => {
    if (stopped) return;
    task().catch(onError);
  };
  run();
  const handle = setInterval(run, intervalMs);
  return () => {
    stopped = true;
    clearInterval(handle);
  };
}
