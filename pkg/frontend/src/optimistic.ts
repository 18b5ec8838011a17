/**
 * Optimistic mutation helper: apply a local change immediately, run the
 * remote call, and revert from the snapshot if it fails.
 */

export interface OptimisticOptions<T, R> {
  /** Apply the change now; returns a snapshot used for revert. */
  apply: () => T;
  /** The actual remote operation. */
  remote: () => Promise<R>;
  /** Undo the local change after a remote failure. */
  revert: (snapshot: T) => void;
  onError?: (error: unknown) => void;
}

export async function optimistic<T, R>(
  options: OptimisticOptions<T, R>
): Promise<R | undefined> {
  const snapshot = options.apply();
  try {
    return await options.remote();
  } catch (error) {
    options.revert(snapshot);
    options.onError?.(error);
    return undefined;
  }
}
