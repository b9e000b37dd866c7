import Rand from 'rand-seed';

/** Deterministic stream of draws; every source of randomness in the
 * harness goes through one of these so runs replay exactly. */
export class SeededRng {
    private rand: Rand;

    constructor(seed: number | string) {
        this.rand = new Rand(String(seed));
    }

    next(): number {
        return this.rand.next();
    }

    int(bound: number): number {
        if (bound <= 0) throw new Error(`bound must be positive, got ${bound}`);
        return Math.floor(this.next() * bound);
    }

    pick<T>(items: readonly T[]): T {
        if (items.length === 0) throw new Error('cannot pick from an empty list');
        return items[this.int(items.length)];
    }

    shuffle<T>(items: T[]): T[] {
        for (let i = items.length - 1; i > 0; i--) {
            const j = this.int(i + 1);
            const tmp = items[i];
            items[i] = items[j];
            items[j] = tmp;
        }
        return items;
    }

    /** Box-Muller; used for weight init only. */
    normal(): number {
        let u = 0;
        while (u === 0) u = this.next();
        const v = this.next();
        return Math.sqrt(-2.0 * Math.log(u)) * Math.cos(2.0 * Math.PI * v);
    }
}
