import { PartitiClient } from "./api.js";
import { BoardView } from "./board.js";
import { GameState } from "./state.js";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app container");

const state = new GameState(new PartitiClient(""));
new BoardView(root, state);
setInterval(() => state.tick(), 1000);
void state.newGame("any");
