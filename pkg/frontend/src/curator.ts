// Curator identity lives in localStorage only; the server never stores it
// beyond the decisions it signs.

const KEY = "knowcert.curator";

export function loadCurator(): string {
  try {
    return window.localStorage.getItem(KEY) ?? "";
  } catch {
    return "";
  }
}

export function saveCurator(name: string): void {
  try {
    window.localStorage.setItem(KEY, name.trim());
  } catch {
    // storage blocked (private mode); identity lasts for the tab only
  }
}
