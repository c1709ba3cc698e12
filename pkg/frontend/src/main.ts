import { ShopApp } from './app';

const root = document.getElementById('app');
if (root) {
  void new ShopApp(root).boot();
}
