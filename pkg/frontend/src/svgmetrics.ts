/** Small readings taken directly from rendered SVG text.
 *
 * The renderer emits H commands exclusively for flat (block) edges and C
 * commands exclusively for transitions, so summing |dx| over H commands
 * measures twice the total flat width (top and bottom edges).
 */

const PATH_D = /<path[^>]*\bd="([^"]*)"/g;
const TOKEN = /([MLHCAZ])([^MLHCAZ]*)/g;

function numbers(text: string): number[] {
  const out: number[] = [];
  for (const m of text.matchAll(/-?\d+(?:\.\d+)?/g)) out.push(Number(m[0]));
  return out;
}

export function totalFlatWidth(svg: string): number {
  let doubled = 0;
  for (const path of svg.matchAll(PATH_D)) {
    let x = 0;
    for (const token of path[1].matchAll(TOKEN)) {
      const args = numbers(token[2]);
      switch (token[1]) {
        case 'M':
        case 'L':
          x = args[0];
          break;
        case 'H':
          doubled += Math.abs(args[0] - x);
          x = args[0];
          break;
        case 'C':
          x = args[4];
          break;
        case 'A':
          x = args[5];
          break;
        case 'Z':
          break;
      }
    }
  }
  return doubled / 2;
}

export function pathCount(svg: string): number {
  return [...svg.matchAll(PATH_D)].length;
}
