// Timestamp rendering. Cells show the viewer's local wall clock as
// DD.MM.YYYY HH:MM:SS; the tooltip carries the unambiguous UTC instant.

function pad(value: number): string {
  return String(value).padStart(2, '0');
}

export function formatLocalTimestamp(unixSeconds: number): string {
  const d = new Date(unixSeconds * 1000);
  const date = `${pad(d.getDate())}.${pad(d.getMonth() + 1)}.${d.getFullYear()}`;
  const time = `${pad(d.getHours())}:${pad(d.getMinutes())}:${pad(d.getSeconds())}`;
  return `${date} ${time}`;
}

export function formatUtcTooltip(unixSeconds: number): string {
  const iso = new Date(unixSeconds * 1000).toISOString();
  return `${iso.slice(0, 10)} ${iso.slice(11, 19)} UTC`;
}
